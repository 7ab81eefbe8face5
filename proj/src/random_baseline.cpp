#include "tsili/random_baseline.hpp"

#include <vector>

namespace tsili {

namespace {

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

void check_args(long long total, long long defective) {
    if (total < 1 || defective < 1 || defective > total) {
        throw ConfigError("random baseline: need 1 <= defective <= total");
    }
}

}  // namespace

Rational random_ap_rational(long long total, long long defective) {
    check_args(total, defective);
    if (total > kExactBaselineLimit) {
        throw ConfigError("random_ap_rational: exact path is limited to N <= " +
                          std::to_string(kExactBaselineLimit));
    }
    if (total == 1) return 1;
    Rational harmonic = 0;
    for (long i = 1; i <= total; ++i) harmonic += Rational(1, i);
    Rational n(static_cast<long>(total)), k(static_cast<long>(defective));
    Rational value = (harmonic + (k - 1) / (n - 1) * (n - harmonic)) / n;
    value.canonicalize();
    return value;
}

Rational random_rr_rational(long long total, long long defective) {
    check_args(total, defective);
    if (total > kExactBaselineLimit) {
        throw ConfigError("random_rr_rational: exact path is limited to N <= " +
                          std::to_string(kExactBaselineLimit));
    }
    Rational sum = 0;
    for (long i = 1; i <= total - defective + 1; ++i) {
        Rational term(binomial(static_cast<unsigned long>(total - i),
                               static_cast<unsigned long>(defective - 1)),
                      mpz_class(i));
        sum += term;
    }
    Rational value = sum / Rational(binomial(static_cast<unsigned long>(total),
                                             static_cast<unsigned long>(defective)));
    value.canonicalize();
    return value;
}

Rational brute_force_random(Indicator ind, long long total, long long defective) {
    check_args(total, defective);
    if (ind != Indicator::AP && ind != Indicator::RR) {
        throw ConfigError("brute_force_random supports AP and RR only");
    }
    if (total > 12) {
        throw ConfigError("brute_force_random: N <= 12 required (got " + std::to_string(total) +
                          ")");
    }

    // Enumerate every arrangement of `defective` ones over `total` slots as
    // position vectors in lexicographic order.
    std::vector<int> pos(static_cast<std::size_t>(defective));
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = static_cast<int>(i) + 1;

    Rational sum = 0;
    long arrangements = 0;
    while (true) {
        ++arrangements;
        if (ind == Indicator::RR) {
            sum += Rational(1, pos.front());
        } else {
            Rational ap = 0;
            for (std::size_t j = 0; j < pos.size(); ++j) {
                ap += Rational(static_cast<long>(j) + 1, pos[j]);  // precision at j-th defective
            }
            sum += ap / Rational(static_cast<long>(defective));
        }

        // next combination
        int idx = static_cast<int>(pos.size()) - 1;
        while (idx >= 0 && pos[idx] == static_cast<int>(total) - static_cast<int>(pos.size()) +
                               idx + 1) {
            --idx;
        }
        if (idx < 0) break;
        ++pos[idx];
        for (std::size_t j = idx + 1; j < pos.size(); ++j) pos[j] = pos[j - 1] + 1;
    }

    Rational mean = sum / Rational(arrangements);
    mean.canonicalize();
    return mean;
}

}  // namespace tsili
