#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace tsili {

struct Sha256Digest {
    std::array<std::uint8_t, 32> bytes{};

    std::string hex() const;
    friend bool operator==(const Sha256Digest&, const Sha256Digest&) = default;
    friend auto operator<=>(const Sha256Digest&, const Sha256Digest&) = default;
};

// FIPS 180-4 SHA-256. sha256("") =
// e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855
Sha256Digest sha256(std::string_view data);

}  // namespace tsili
