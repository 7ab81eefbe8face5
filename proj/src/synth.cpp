#include "tsili/synth.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "tsili/bootstrap.hpp"
#include "tsili/csv.hpp"

namespace tsili {

namespace fs = std::filesystem;

ScenarioKind scenario_kind_from_string(const std::string& token) {
    for (ScenarioKind kind : all_scenario_kinds()) {
        if (token == to_string(kind)) return kind;
    }
    throw ConfigError("unknown scenario kind: \"" + token + "\"");
}

const char* to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::NoBugFp: return "no-bug-fp";
        case ScenarioKind::IntrinsicFn: return "intrinsic-fn";
        case ScenarioKind::Extrinsic: return "extrinsic";
        case ScenarioKind::SzzComment: return "szz-comment";
        case ScenarioKind::SzzRollback: return "szz-rollback";
        case ScenarioKind::TimeWindow: return "time-window";
        case ScenarioKind::AvEarliest: return "av-earliest";
        case ScenarioKind::AvMissing: return "av-missing";
        case ScenarioKind::AvError: return "av-error";
    }
    return "?";
}

std::vector<ScenarioKind> all_scenario_kinds() {
    return {ScenarioKind::NoBugFp,    ScenarioKind::IntrinsicFn, ScenarioKind::Extrinsic,
            ScenarioKind::SzzComment, ScenarioKind::SzzRollback, ScenarioKind::TimeWindow,
            ScenarioKind::AvEarliest, ScenarioKind::AvMissing,   ScenarioKind::AvError};
}

SchemaConfig synth_schema() { return {"name", "bug", "loc", {}}; }

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// A module's code identity: token stream plus fixed gap classes. Renderings
// may vary whitespace and inject comments only at space gaps, so the
// normalized form is a pure function of the stream.
struct TokenStream {
    std::vector<std::string> tokens;
    std::vector<bool> space_gap;  // gap between tokens[i] and tokens[i+1]
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
}

bool gap_must_space(const std::string& left, const std::string& right) {
    char l = left.back();
    char r = right.front();
    if (ident_char(l) && ident_char(r)) return true;
    if (l == '/' && (r == '/' || r == '*')) return true;  // would open a comment
    if (l == '*' && r == '/') return true;                // would close one
    if (l == '"' || r == '"' || l == '\'' || r == '\'') return true;
    return false;
}

void finalize_gaps(TokenStream& ts, SplitMix64& rng) {
    ts.space_gap.assign(ts.tokens.size() > 1 ? ts.tokens.size() - 1 : 0, false);
    for (std::size_t i = 0; i + 1 < ts.tokens.size(); ++i) {
        bool must = gap_must_space(ts.tokens[i], ts.tokens[i + 1]);
        ts.space_gap[i] = must || rng.next_below(100) < 35;
    }
}

const char* kWords[] = {"adjust", "buffer", "cache",  "delta",  "edge",   "flush",
                        "guard",  "handle", "index",  "joiner", "kernel", "ledger",
                        "merge",  "notch",  "outlet", "pivot"};

const char* kPackages[] = {"core", "util", "io", "data", "web", "net"};

std::string pick_word(SplitMix64& rng) { return kWords[rng.next_below(std::size(kWords))]; }

std::string class_name(SplitMix64& rng) {
    std::string a = pick_word(rng), b = pick_word(rng);
    a[0] = char(std::toupper(static_cast<unsigned char>(a[0])));
    b[0] = char(std::toupper(static_cast<unsigned char>(b[0])));
    return a + b;
}

void push(TokenStream& ts, std::initializer_list<const char*> tokens) {
    for (const char* t : tokens) ts.tokens.emplace_back(t);
}

void push_s(TokenStream& ts, std::string token) { ts.tokens.push_back(std::move(token)); }

// Builds a Java-looking class body. `variant` changes constants and method
// shapes so different variants normalize differently.
TokenStream build_token_stream(const std::string& dotted_name, std::uint64_t seed,
                               int variant, int min_bytes, int max_bytes) {
    std::size_t dot = dotted_name.find_last_of('.');
    std::string pkg = dot == std::string::npos ? "synth" : dotted_name.substr(0, dot);
    std::string cls = dot == std::string::npos ? dotted_name : dotted_name.substr(dot + 1);

    SplitMix64 rng(derive_seed(seed, fnv1a(dotted_name) ^ (0x9e37ULL * std::uint64_t(variant + 1))));
    TokenStream ts;
    push(ts, {"package"});
    push_s(ts, pkg);
    push(ts, {";"});
    if (rng.next_below(2) == 0) {
        push(ts, {"import", "java.util.List", ";"});
    }
    push(ts, {"public", "class"});
    push_s(ts, cls);
    push(ts, {"{"});

    int target_bytes =
        min_bytes + int(rng.next_below(std::uint64_t(std::max(1, max_bytes - min_bytes))));
    int emitted = 0;
    int field_count = 1 + int(rng.next_below(3));
    for (int f = 0; f < field_count; ++f) {
        push(ts, {"private", "int"});
        push_s(ts, "f" + std::to_string(f));
        push(ts, {"="});
        push_s(ts, std::to_string(rng.next_below(97) + std::uint64_t(variant) * 131));
        push(ts, {";"});
    }
    int method = 0;
    while (emitted < target_bytes) {
        std::string m = "m" + std::to_string(method++);
        push(ts, {"public", "int"});
        push_s(ts, m);
        push(ts, {"(", "int", "a", ",", "int", "b", ")", "{"});
        switch (rng.next_below(4)) {
            case 0: {
                push(ts, {"int", "x", "="});
                push_s(ts, std::to_string(rng.next_below(1000)));
                push(ts, {";", "if", "(", "a", ">", "x", ")", "{", "return", "a", "*"});
                push_s(ts, std::to_string(2 + rng.next_below(9)));
                push(ts, {";", "}", "return", "b", "-", "x", ";"});
                break;
            }
            case 1: {
                push(ts, {"String", "s", "="});
                // comment-lookalike inside a literal; must survive verbatim
                push_s(ts, std::string("\"") + pick_word(rng) + " // " + pick_word(rng) + "\"");
                push(ts, {";", "return", "s", ".", "length", "(", ")", "+", "a", ";"});
                break;
            }
            case 2: {
                push(ts, {"char", "c", "="});
                push_s(ts, "'" + std::string(1, char('a' + rng.next_below(26))) + "'");
                push(ts, {";", "return", "c", "+", "b", ";"});
                break;
            }
            default: {
                push(ts, {"int", "acc", "=", "0", ";", "for", "(", "int", "i", "=", "0", ";",
                          "i", "<", "a", ";", "i", "++", ")", "{", "acc", "+=", "i", "%"});
                push_s(ts, std::to_string(1 + rng.next_below(17)));
                push(ts, {";", "}", "return", "acc", ";"});
                break;
            }
        }
        push(ts, {"}"});
        emitted = 0;
        for (const auto& t : ts.tokens) emitted += int(t.size()) + 1;
    }
    push(ts, {"}"});
    finalize_gaps(ts, rng);
    return ts;
}

std::string random_comment(SplitMix64& rng) {
    std::string words = pick_word(rng);
    for (std::uint64_t i = rng.next_below(3); i > 0; --i) words += " " + pick_word(rng);
    if (rng.next_below(2) == 0) return "// " + words + "\n";
    return "/* " + words + " */";
}

std::string random_ws(SplitMix64& rng) {
    switch (rng.next_below(5)) {
        case 0: return "  ";
        case 1: return "\n";
        case 2: return "\n    ";
        case 3: return "\t";
        default: return " ";
    }
}

// Renders a stream with version-specific whitespace and comments. Only
// space gaps may absorb the randomness.
std::string render(const TokenStream& ts, std::uint64_t render_seed) {
    SplitMix64 rng(render_seed);
    std::string out;
    if (rng.next_below(2) == 0) {
        out += "/*\n * " + pick_word(rng) + " " + pick_word(rng) + "\n */\n";
    }
    for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
        out += ts.tokens[i];
        if (i + 1 >= ts.tokens.size()) break;
        if (!ts.space_gap[i]) continue;
        std::uint64_t roll = rng.next_below(100);
        if (roll < 12) {
            out += " " + random_comment(rng);
            if (out.back() != '\n') out += " ";
        } else if (roll < 40) {
            out += random_ws(rng);
        } else {
            out += " ";
        }
    }
    out += "\n";
    return out;
}

std::string comment_only_file(std::uint64_t render_seed) {
    SplitMix64 rng(render_seed);
    std::string out = "/*\n";
    for (int i = 0; i < 3; ++i) out += " * " + pick_word(rng) + " " + pick_word(rng) + "\n";
    out += " */\n\n// " + pick_word(rng) + "\n";
    return out;
}

// One planted or supporting module: which versions it exists in, the code
// variant per version, the labels, and the expected flag.
struct PlannedModule {
    std::string name;
    bool has_file = true;
    bool comment_only = false;
    std::vector<int> versions;    // indices into the version list
    std::vector<int> variant;     // same length
    std::vector<int> collected;   // dataset label
    std::vector<int> actual;      // ground truth
    std::vector<IlFlag> expected;
};

struct Plan {
    std::vector<std::string> versions;
    std::vector<PlannedModule> modules;
};

PlannedModule target(const std::string& name, std::vector<int> versions, std::vector<int> variant,
                     std::vector<int> actual, std::vector<int> collected, bool control) {
    PlannedModule m;
    m.name = name;
    m.versions = std::move(versions);
    m.variant = std::move(variant);
    if (control) {
        // control fixtures plant nothing: labels stay consistent and clean
        m.actual.assign(m.versions.size(), 0);
        m.collected.assign(m.versions.size(), 0);
        m.expected.assign(m.versions.size(), IlFlag::No);
    } else {
        m.actual = std::move(actual);
        m.collected = std::move(collected);
        // Same-variant groups with mixed labels are flagged; an all-equal
        // label vector (shouldn't happen for targets) would stay NO.
        m.expected.assign(m.versions.size(), IlFlag::Yes);
        for (std::size_t i = 0; i < m.versions.size(); ++i) {
            bool mixed = false;
            for (std::size_t j = 0; j < m.versions.size(); ++j) {
                if (m.variant[j] == m.variant[i] && m.collected[j] != m.collected[i]) mixed = true;
            }
            if (!mixed) m.expected[i] = IlFlag::No;
        }
    }
    return m;
}

Plan build_plan(const SynthScenario& scenario) {
    const SynthParams& params = scenario.params;
    const bool control = params.control;
    Plan plan;

    auto versions_named = [&](std::initializer_list<const char*> names) {
        for (const char* n : names) plan.versions.emplace_back(n);
    };
    std::vector<int> all;  // filled once version count is final

    switch (scenario.kind) {
        case ScenarioKind::NoBugFp:
            versions_named({"V1.0", "V1.1"});
            plan.modules.push_back(target("synth.app.Subject", {0, 1}, {0, 0}, {0, 0}, {1, 0},
                                          control));
            break;
        case ScenarioKind::IntrinsicFn:
            versions_named({"V1.2", "V1.3", "V1.4"});
            plan.modules.push_back(target("synth.app.Subject", {0, 1, 2}, {0, 0, 0}, {1, 1, 1},
                                          {1, 0, 0}, control));
            break;
        case ScenarioKind::Extrinsic:
            versions_named({"V1.0", "V1.1", "V1.2", "V1.3", "V1.4"});
            // labels are all correct here; the inconsistency is real but benign
            plan.modules.push_back(target("synth.app.Subject", {0, 1, 2, 3, 4}, {0, 0, 0, 0, 0},
                                          {0, 0, 1, 1, 1}, {0, 0, 1, 1, 1}, control));
            break;
        case ScenarioKind::SzzComment: {
            versions_named({"V1.1", "V1.2"});
            plan.modules.push_back(target("synth.app.Commented", {0, 1}, {0, 0}, {0, 0}, {0, 1},
                                          control));
            // the genuinely fixed module: code differs, labels differ, not flagged
            PlannedModule fixed = target("synth.app.Patched", {0, 1}, {0, 1}, {1, 0}, {1, 0},
                                         control);
            plan.modules.push_back(std::move(fixed));
            break;
        }
        case ScenarioKind::SzzRollback:
            versions_named({"V1.1", "V1.2"});
            plan.modules.push_back(target("synth.app.Rolled", {0, 1}, {0, 0}, {1, 1}, {0, 1},
                                          control));
            break;
        case ScenarioKind::TimeWindow:
            versions_named({"V1.1", "V1.2"});
            plan.modules.push_back(target("synth.app.Lagging", {0, 1}, {0, 0}, {1, 1}, {0, 1},
                                          control));
            plan.modules.push_back(target("synth.app.Bystander", {0, 1}, {0, 0}, {0, 0}, {0, 1},
                                          control));
            break;
        case ScenarioKind::AvEarliest:
            versions_named({"V1.1", "V1.2"});
            plan.modules.push_back(target("synth.app.Carried", {0, 1}, {0, 0}, {1, 1}, {1, 0},
                                          control));
            plan.modules.push_back(target("synth.app.Bystander", {0, 1}, {0, 0}, {0, 0}, {1, 0},
                                          control));
            break;
        case ScenarioKind::AvMissing:
            versions_named({"V1.1", "V1.2"});
            plan.modules.push_back(target("synth.app.Unlisted", {0, 1}, {0, 0}, {1, 1}, {0, 1},
                                          control));
            break;
        case ScenarioKind::AvError:
            versions_named({"V1.1", "V1.2", "V1.3", "V1.4"});
            // two code groups, each ending up (clean, buggy)
            plan.modules.push_back(target("synth.app.Misfiled", {0, 1, 2, 3}, {0, 0, 1, 1},
                                          {0, 0, 1, 1}, {0, 1, 0, 1}, control));
            break;
    }

    int want = std::max<int>(params.version_count, int(plan.versions.size()));
    for (int v = int(plan.versions.size()); v < want; ++v) {
        plan.versions.push_back("V2." + std::to_string(v));
    }
    for (int v = 0; v < int(plan.versions.size()); ++v) all.push_back(v);

    // NA paths: an instance with no source file anywhere, and a comment-only
    // file. Both get alternating labels so their groups are actually
    // examined in stage 2.
    {
        PlannedModule ghost;
        ghost.name = "synth.missing.Ghost";
        ghost.has_file = false;
        ghost.versions = all;
        for (int v : all) {
            ghost.variant.push_back(0);
            ghost.collected.push_back(v % 2);
            ghost.actual.push_back(v % 2);
            ghost.expected.push_back(IlFlag::Na);
        }
        plan.modules.push_back(std::move(ghost));

        PlannedModule notes;
        notes.name = "synth.doc.PackageNotes";
        notes.comment_only = true;
        notes.versions = all;
        for (int v : all) {
            notes.variant.push_back(0);
            notes.collected.push_back(plan.versions.size() > 1 ? v % 2 : 0);
            notes.actual.push_back(0);
            notes.expected.push_back(IlFlag::Na);
        }
        plan.modules.push_back(std::move(notes));
    }

    // Decoys: identical code with consistent labels, and drifting code with
    // drifting labels (both must stay NO).
    SplitMix64 names_rng(derive_seed(scenario.seed, 0xDECAF));
    {
        PlannedModule steady;
        steady.name = "synth.base.Steady";
        steady.versions = all;
        int label = int(names_rng.next_below(2));
        for (int v : all) {
            steady.variant.push_back(0);
            steady.collected.push_back(label);
            steady.actual.push_back(label);
            steady.expected.push_back(IlFlag::No);
        }
        plan.modules.push_back(std::move(steady));

        if (plan.versions.size() > 1) {
            PlannedModule drift;
            drift.name = "synth.base.Drift";
            drift.versions = all;
            for (int v : all) {
                drift.variant.push_back(v);  // different code every version
                drift.collected.push_back(v % 2);
                drift.actual.push_back(v % 2);
                drift.expected.push_back(IlFlag::No);
            }
            plan.modules.push_back(std::move(drift));
        }
    }

    // Fillers: unique names, consistent labels; roughly half keep the same
    // code across versions, the rest drift.
    for (int f = 0; f < params.module_count; ++f) {
        SplitMix64 rng(derive_seed(scenario.seed, 0xF111E4 + std::uint64_t(f)));
        std::string pkg = kPackages[rng.next_below(std::size(kPackages))];
        std::string name = "synth." + pkg + "." + class_name(rng) + std::to_string(f);
        PlannedModule filler;
        filler.name = name;
        bool same_code = rng.next_below(2) == 0;
        bool everywhere = rng.next_below(4) != 0;
        int label = int(rng.next_below(5) == 0);
        int only = int(rng.next_below(plan.versions.size()));
        for (int v : all) {
            if (!everywhere && v != only) continue;
            filler.versions.push_back(v);
            filler.variant.push_back(same_code ? 0 : v + 1);
            filler.collected.push_back(label);
            filler.actual.push_back(label);
            filler.expected.push_back(IlFlag::No);
        }
        plan.modules.push_back(std::move(filler));
    }
    return plan;
}

std::string dotted_to_path(const std::string& dotted) {
    std::string path = dotted;
    std::replace(path.begin(), path.end(), '.', '/');
    return path + ".java";
}

void write_text(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write fixture file: " + path.string());
    out << content;
    if (!out) throw IoError("error writing fixture file: " + path.string());
}

}  // namespace

FixtureLayout generate(const SynthScenario& scenario, const fs::path& out_dir) {
    Plan plan = build_plan(scenario);
    const SynthParams& params = scenario.params;

    FixtureLayout layout;
    layout.out_dir = out_dir;
    layout.versions = plan.versions;
    layout.manifest = out_dir / "manifest";
    layout.truth_csv = out_dir / "truth.csv";

    fs::create_directories(out_dir);

    std::string manifest_text;
    CsvTable truth;
    truth.header = {"name", "version", "actual", "collected", "expectedFlag"};

    for (int v = 0; v < int(plan.versions.size()); ++v) {
        const std::string& version = plan.versions[std::size_t(v)];
        fs::path src_root = out_dir / version / "src";
        fs::create_directories(src_root);
        manifest_text += "version " + version + " " + version + "/src\n";

        CsvTable dataset;
        dataset.header = {"name", "wmc", "loc", "bug"};

        for (const PlannedModule& module : plan.modules) {
            auto it = std::find(module.versions.begin(), module.versions.end(), v);
            if (it == module.versions.end()) continue;
            std::size_t slot = std::size_t(it - module.versions.begin());

            if (module.has_file) {
                std::uint64_t render_seed =
                    derive_seed(scenario.seed, fnv1a(module.name) ^ fnv1a(version));
                std::string content;
                if (module.comment_only) {
                    content = comment_only_file(render_seed);
                } else {
                    TokenStream ts =
                        build_token_stream(module.name, scenario.seed, module.variant[slot],
                                           params.filler_code_min, params.filler_code_max);
                    content = render(ts, render_seed);
                }
                write_text(src_root / dotted_to_path(module.name), content);
            }

            SplitMix64 row_rng(derive_seed(scenario.seed, fnv1a(module.name + "#" + version)));
            int collected = module.collected[slot];
            std::string bug_cell =
                collected ? std::to_string(1 + row_rng.next_below(3)) : std::string("0");
            dataset.rows.push_back({module.name, std::to_string(row_rng.next_below(60) + 1),
                                    std::to_string(row_rng.next_below(900) + 20), bug_cell});
            truth.rows.push_back({module.name, version, std::to_string(module.actual[slot]),
                                  std::to_string(collected),
                                  to_string(module.expected[slot])});
        }

        // deterministic but non-alphabetical row order
        std::sort(dataset.rows.begin(), dataset.rows.end(),
                  [](const auto& a, const auto& b) {
                      return fnv1a(a.front()) < fnv1a(b.front());
                  });
        write_csv(out_dir / (version + ".csv"), dataset);
    }

    std::sort(truth.rows.begin(), truth.rows.end());
    write_csv(layout.truth_csv, truth);
    write_text(layout.manifest, manifest_text);
    return layout;
}

GroundTruth load_truth(const fs::path& truth_csv) {
    CsvTable table = read_csv(truth_csv);
    int name_idx = table.column("name");
    int version_idx = table.column("version");
    int actual_idx = table.column("actual");
    int collected_idx = table.column("collected");
    int flag_idx = table.column("expectedFlag");
    if (name_idx < 0 || version_idx < 0 || actual_idx < 0 || collected_idx < 0 || flag_idx < 0) {
        throw SchemaError("truth CSV missing columns: " + truth_csv.string());
    }
    GroundTruth truth;
    for (const auto& row : table.rows) {
        TruthEntry entry;
        entry.name = row[std::size_t(name_idx)];
        entry.version = row[std::size_t(version_idx)];
        entry.actual = std::stoi(row[std::size_t(actual_idx)]);
        entry.collected = std::stoi(row[std::size_t(collected_idx)]);
        entry.expected = il_flag_from_string(row[std::size_t(flag_idx)]);
        truth.entries.push_back(std::move(entry));
    }
    return truth;
}

VerificationReport verify(const GroundTruth& truth, const MultiVersionDataset& augmented) {
    std::map<std::pair<std::string, std::string>, IlFlag> flagged;
    for (const VersionDataset& ds : augmented.versions) {
        for (const Instance& inst : ds.instances) {
            flagged[{ds.version, inst.name}] = inst.il_flag;
        }
    }

    VerificationReport report;
    std::size_t hits = 0;
    std::size_t matched_na = 0, expected_na = 0, flagged_na = 0;
    for (const TruthEntry& entry : truth.entries) {
        auto it = flagged.find({entry.version, entry.name});
        if (it == flagged.end()) {
            throw ConfigError("verify: truth instance missing from datasets: " + entry.name +
                              " @ " + entry.version);
        }
        IlFlag actual = it->second;
        if (entry.expected == IlFlag::Yes) ++report.expected_yes;
        if (actual == IlFlag::Yes) {
            ++report.flagged_yes;
            if (entry.expected == IlFlag::Yes) ++hits;
        }
        if (entry.expected == IlFlag::Na) ++expected_na;
        if (actual == IlFlag::Na) ++flagged_na;
        if (entry.expected == IlFlag::Na && actual == IlFlag::Na) ++matched_na;
    }
    if (truth.entries.size() != flagged.size()) {
        throw ConfigError("verify: dataset contains instances not covered by the truth");
    }
    if (report.flagged_yes > 0) {
        report.precision = double(hits) / double(report.flagged_yes);
    }
    if (report.expected_yes > 0) {
        report.recall = double(hits) / double(report.expected_yes);
    }
    report.na_mismatches = (expected_na - matched_na) + (flagged_na - matched_na);
    report.na_exact = report.na_mismatches == 0;
    return report;
}

}  // namespace tsili
