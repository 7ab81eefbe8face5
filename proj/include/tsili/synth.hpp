#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tsili/common.hpp"
#include "tsili/dataset.hpp"

namespace tsili {

// Labelling-failure mechanisms reproduced as planted fixtures. Each kind
// emits the label pattern its mechanism produces on a module whose
// normalized code is identical across the affected versions.
enum class ScenarioKind {
    NoBugFp,      // spurious buggy label on an unchanged clean module
    IntrinsicFn,  // fix-spanning versions where later buggy labels are lost
    Extrinsic,    // correct but inconsistent labels (no code change at all)
    SzzComment,   // comment-only change blamed as bug-introducing
    SzzRollback,  // rollback change hides the earlier introduction
    TimeWindow,   // window too short (FN) + mixed-purpose commit (FP)
    AvEarliest,   // only the earliest affected version labelled (FN + FP)
    AvMissing,    // affected-version field missing a version (FN)
    AvError,      // wrong version recorded (FP + FN, two code groups)
};

ScenarioKind scenario_kind_from_string(const std::string& token);
const char* to_string(ScenarioKind kind);
std::vector<ScenarioKind> all_scenario_kinds();

struct SynthParams {
    int module_count = 10;          // decoy/filler modules per version
    int version_count = 0;          // 0 = the kind's natural count
    int filler_code_min = 200;      // bytes of generated method bodies
    int filler_code_max = 900;
    bool control = false;  // plant no inconsistency (all target labels clean)
};

struct SynthScenario {
    ScenarioKind kind = ScenarioKind::SzzRollback;
    std::uint64_t seed = 0;
    SynthParams params;
};

struct TruthEntry {
    std::string name;
    std::string version;
    int actual = 0;     // ground-truth defectiveness
    int collected = 0;  // label the mechanism wrote into the dataset
    IlFlag expected = IlFlag::No;
};

struct GroundTruth {
    std::vector<TruthEntry> entries;
};

struct FixtureLayout {
    std::filesystem::path out_dir;
    std::filesystem::path manifest;   // <out>/manifest
    std::filesystem::path truth_csv;  // <out>/truth.csv
    std::vector<std::string> versions;
};

/// Emits `<out>/<version>/src/...` trees, `<out>/<version>.csv` datasets,
/// `<out>/truth.csv` and `<out>/manifest`. Same (kind, seed, params) gives
/// byte-identical output. Every fixture also contains one instance whose
/// source file is omitted and one comment-only file with mixed labels, so
/// both NA paths are exercised.
FixtureLayout generate(const SynthScenario& scenario, const std::filesystem::path& out_dir);

GroundTruth load_truth(const std::filesystem::path& truth_csv);

// Schema of the generated dataset CSVs (metrics-repo family: name,bug,loc).
SchemaConfig synth_schema();

struct VerificationReport {
    std::optional<double> precision;  // over expected YES; NA when nothing flagged
    std::optional<double> recall;
    bool na_exact = false;  // NA positions match the truth exactly
    std::size_t flagged_yes = 0, expected_yes = 0, na_mismatches = 0;
};

/// Compares augmented datasets against the planted truth. Instances present
/// in the truth but absent from the datasets (or vice versa) raise
/// ConfigError.
VerificationReport verify(const GroundTruth& truth, const MultiVersionDataset& augmented);

}  // namespace tsili
