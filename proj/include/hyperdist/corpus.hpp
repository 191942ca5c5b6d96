#pragma once

#include "hyperdist/identity.hpp"
#include "hyperdist/numctx.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hyperdist {

struct CorpusEntry {
    enum class Mode { fixed, parametric };
    enum class Status { ok, disputed };

    Identity identity;
    std::vector<std::string> class_tags;
    Mode mode = Mode::fixed;
    unsigned samples = 0; // parametric only
    int tolerance_exp = -15;
    Status status = Status::ok;
    std::string note;
};

struct Corpus {
    int schema = 1;
    std::vector<CorpusEntry> entries;
};

std::string default_corpus_path();
Corpus load_corpus(const std::string& path);
Corpus corpus_from_json(const nlohmann::json& j);
nlohmann::json corpus_to_json(const Corpus& c);
void save_corpus(const Corpus& c, const std::string& path);

// specializes a parametric entry; throws ConstraintViolated on a bad binding
Identity instantiate(const CorpusEntry& e, const std::map<std::string, Rational>& binding);

// deterministic rejection sampler over the constraint region, denominators
// <= 24 and magnitudes <= 3
std::vector<std::map<std::string, Rational>> sample_bindings(const CorpusEntry& e,
                                                             unsigned count,
                                                             std::uint64_t seed);

struct VerificationReport {
    std::string name;
    CBall lhs_value, rhs_value;
    std::string lhs_str, rhs_str, abs_diff_str;
    double abs_diff_log10 = 0.0;
    bool passed = false;
    bool heuristic = false;
    double elapsed = 0.0;
    std::string error;
    std::map<std::string, Rational> binding;
};

VerificationReport verify(const Identity& id, Precision prec, int tol_exp);

struct EntryResult {
    std::string name;
    CorpusEntry::Mode mode = CorpusEntry::Mode::fixed;
    CorpusEntry::Status status = CorpusEntry::Status::ok;
    unsigned samples = 0;
    bool passed = false;
    bool heuristic = false;
    double max_diff_log10 = -400.0;
    VerificationReport worst; // the report with the largest diff (or the failure)
};

struct RunSummary {
    unsigned total = 0, passed = 0, failed = 0, disputed = 0;
    std::vector<EntryResult> entries;
    std::uint64_t seed = 0;
    Precision prec;
};

RunSummary run_all(const Corpus& corpus, Precision prec, unsigned parallelism,
                   std::uint64_t seed, const std::string& tag_filter = "");

nlohmann::json summary_to_json(const RunSummary& s);

} // namespace hyperdist
