#include "hyperdist/corpus.hpp"

#include "hyperdist/errors.hpp"
#include "hyperdist/evaluator.hpp"
#include "hyperdist/json_io.hpp"
#include "hyperdist/series.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <thread>

namespace hyperdist {

using nlohmann::json;

std::string default_corpus_path() {
    if (const char* env = std::getenv("HYPERDIST_CORPUS")) return env;
    return std::string(HYPERDIST_DATA_DIR) + "/corpus.json";
}

namespace {

void validate_hyp_nodes(const Expr& e, const std::string& entry, bool inside_hyp_params) {
    const ExprNode& n = e.node();
    if (n.kind == Kind::Hyp) {
        if (inside_hyp_params)
            throw ValidationError("entry '" + entry + "': series nested inside series parameters");
        for (const Expr& c : n.hyp_lower) {
            auto r = canonical(c).as_rational();
            if (r && r->is_nonpositive_integer())
                throw ValidationError("entry '" + entry +
                                      "': lower parameter is a nonpositive integer");
            validate_hyp_nodes(c, entry, true);
        }
        for (const Expr& c : n.hyp_upper) validate_hyp_nodes(c, entry, true);
    }
    for (const Expr& c : n.children) validate_hyp_nodes(c, entry, inside_hyp_params);
}

CorpusEntry entry_from_json(const json& j) {
    CorpusEntry e;
    e.identity = identity_from_json(j);
    if (j.contains("class_tags"))
        for (const json& t : j.at("class_tags")) e.class_tags.push_back(t.get<std::string>());
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "fixed") {
        e.mode = CorpusEntry::Mode::fixed;
    } else if (mode == "parametric") {
        e.mode = CorpusEntry::Mode::parametric;
        e.samples = j.at("samples").get<unsigned>();
    } else {
        throw ValidationError("entry '" + e.identity.name + "': unknown mode '" + mode + "'");
    }
    e.tolerance_exp = j.at("tolerance_exp").get<int>();
    if (j.contains("status")) {
        std::string st = j.at("status").get<std::string>();
        e.status = (st == "disputed") ? CorpusEntry::Status::disputed : CorpusEntry::Status::ok;
    }
    e.note = j.value("note", "");

    if (e.mode == CorpusEntry::Mode::parametric && e.identity.free_symbols.empty())
        throw ValidationError("entry '" + e.identity.name + "': parametric without free symbols");
    if (e.mode == CorpusEntry::Mode::fixed && !e.identity.free_symbols.empty())
        throw ValidationError("entry '" + e.identity.name + "': fixed entry has free symbols");
    validate_hyp_nodes(e.identity.lhs, e.identity.name, false);
    validate_hyp_nodes(e.identity.rhs, e.identity.name, false);
    return e;
}

json entry_to_json(const CorpusEntry& e) {
    json j = identity_to_json(e.identity);
    j["class_tags"] = e.class_tags;
    j["mode"] = e.mode == CorpusEntry::Mode::fixed ? "fixed" : "parametric";
    if (e.mode == CorpusEntry::Mode::parametric) j["samples"] = e.samples;
    j["tolerance_exp"] = e.tolerance_exp;
    if (e.status == CorpusEntry::Status::disputed) {
        j["status"] = "disputed";
        j["note"] = e.note;
    }
    return j;
}

} // namespace

Corpus corpus_from_json(const json& j) {
    Corpus c;
    if (!j.is_object() || !j.contains("schema"))
        throw ParseError("corpus file must be an object with a 'schema' field");
    c.schema = j.at("schema").get<int>();
    if (c.schema != 1) throw ParseError("unsupported corpus schema");
    for (const json& e : j.at("entries")) c.entries.push_back(entry_from_json(e));
    return c;
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& ex) {
        throw ParseError(std::string("corpus parse error: ") + ex.what());
    }
    return corpus_from_json(j);
}

json corpus_to_json(const Corpus& c) {
    json j;
    j["schema"] = c.schema;
    json entries = json::array();
    for (const CorpusEntry& e : c.entries) entries.push_back(entry_to_json(e));
    j["entries"] = std::move(entries);
    return j;
}

void save_corpus(const Corpus& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write corpus file: " + path);
    out << corpus_to_json(c).dump(1) << "\n";
}

Identity instantiate(const CorpusEntry& e, const std::map<std::string, Rational>& binding) {
    for (const std::string& s : e.identity.free_symbols)
        if (!binding.count(s)) throw ConstraintViolated("missing binding for symbol " + s);
    for (const Constraint& c : e.identity.constraints)
        if (!c.satisfied(binding))
            throw ConstraintViolated("constraint failed: " + c.to_text());
    Identity inst = substitute(e.identity, binding);
    inst.lhs = canonical(inst.lhs);
    inst.rhs = canonical(inst.rhs);
    // instantiated series must be valid
    validate_hyp_nodes(inst.lhs, inst.name, false);
    validate_hyp_nodes(inst.rhs, inst.name, false);
    return inst;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

std::vector<std::map<std::string, Rational>> sample_bindings(const CorpusEntry& e,
                                                             unsigned count,
                                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ fnv1a(e.identity.name));
    std::vector<std::map<std::string, Rational>> out;
    unsigned attempts = 0;
    const unsigned max_attempts = 200000;
    while (out.size() < count) {
        if (++attempts > max_attempts)
            throw ValidationError("entry '" + e.identity.name +
                                  "': could not sample bindings satisfying the constraints");
        std::map<std::string, Rational> b;
        for (const std::string& sym : e.identity.free_symbols) {
            long den = 1 + static_cast<long>(rng() % 24);
            long span = 6 * den + 1;
            long num = -3 * den + static_cast<long>(rng() % static_cast<unsigned long>(span));
            b[sym] = Rational(num, den);
        }
        bool ok = true;
        for (const Constraint& c : e.identity.constraints)
            if (!c.satisfied(b)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        try {
            instantiate(e, b);
        } catch (const Error&) {
            continue;
        }
        out.push_back(std::move(b));
    }
    return out;
}

namespace {

std::string mag_to_sci(double log10v) {
    if (log10v < -360.0) return "0";
    double frac = log10v - std::floor(log10v);
    double mant = std::pow(10.0, frac);
    long ex = static_cast<long>(std::floor(log10v));
    if (mant > 9.995) {
        mant /= 10;
        ex += 1;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2fe%ld", mant, ex);
    return buf;
}

std::string ball_to_str(NumContext& ctx, const CBall& v) {
    int digits = static_cast<int>(ctx.precision().digits);
    std::string re = v.re.to_string(digits);
    if (v.im.is_zero()) return re;
    std::string im = v.im.to_string(digits);
    return re + (v.im.sign() >= 0 ? " + " : " - ") +
           (v.im.sign() >= 0 ? im : im.substr(1)) + "*I";
}

} // namespace

VerificationReport verify(const Identity& id, Precision prec, int tol_exp) {
    VerificationReport r;
    r.name = id.name;
    auto t0 = std::chrono::steady_clock::now();
    NumContext ctx(prec);
    try {
        CBall lhs, rhs;
        try {
            lhs = eval_expression(ctx, id.lhs, {});
        } catch (const Error& ex) {
            throw EvaluationError(std::string("lhs: ") + ex.what());
        }
        try {
            rhs = eval_expression(ctx, id.rhs, {});
        } catch (const Error& ex) {
            throw EvaluationError(std::string("rhs: ") + ex.what());
        }
        r.lhs_value = lhs;
        r.rhs_value = rhs;
        r.lhs_str = ball_to_str(ctx, lhs);
        r.rhs_str = ball_to_str(ctx, rhs);
        CBall diff = ctx.sub(lhs, rhs);
        Real d = ctx.abs_center(diff);
        double dl = std::log10(std::max(d.to_double(), 0.0) + 1e-399);
        if (d.is_zero()) dl = -400.0;
        else {
            // log10 via mpfr exponent to survive tiny magnitudes
            if (d.to_double() == 0.0) {
                dl = -400.0;
            } else {
                long e2 = mpfr_get_exp(d.raw());
                dl = static_cast<double>(e2) * 0.30102999566398119521;
            }
        }
        r.abs_diff_log10 = dl;
        r.abs_diff_str = mag_to_sci(dl);
        r.heuristic = lhs.heuristic || rhs.heuristic;
        r.passed = dl <= static_cast<double>(tol_exp);
    } catch (const Error& ex) {
        r.error = ex.what();
        r.passed = false;
    }
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

RunSummary run_all(const Corpus& corpus, Precision prec, unsigned parallelism,
                   std::uint64_t seed, const std::string& tag_filter) {
    std::vector<const CorpusEntry*> selected;
    for (const CorpusEntry& e : corpus.entries) {
        if (!tag_filter.empty()) {
            bool has = false;
            for (const std::string& t : e.class_tags)
                if (t == tag_filter) has = true;
            if (!has) continue;
        }
        selected.push_back(&e);
    }

    RunSummary sum;
    sum.seed = seed;
    sum.prec = prec;
    sum.entries.resize(selected.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= selected.size()) break;
            const CorpusEntry& e = *selected[i];
            EntryResult res;
            res.name = e.identity.name;
            res.mode = e.mode;
            res.status = e.status;
            res.passed = true;
            if (e.mode == CorpusEntry::Mode::fixed) {
                VerificationReport r = verify(e.identity, prec, e.tolerance_exp);
                res.samples = 1;
                res.passed = r.passed;
                res.heuristic = r.heuristic;
                res.max_diff_log10 = r.abs_diff_log10;
                res.worst = std::move(r);
            } else {
                std::vector<std::map<std::string, Rational>> bindings;
                try {
                    bindings = sample_bindings(e, e.samples, seed);
                } catch (const Error& ex) {
                    res.passed = false;
                    res.worst.name = e.identity.name;
                    res.worst.error = ex.what();
                }
                res.samples = static_cast<unsigned>(bindings.size());
                for (const auto& b : bindings) {
                    Identity inst = instantiate(e, b);
                    inst.name = e.identity.name;
                    VerificationReport r = verify(inst, prec, e.tolerance_exp);
                    r.binding = b;
                    bool worse = !r.passed || r.abs_diff_log10 > res.max_diff_log10;
                    if (!res.worst.passed && !res.worst.error.empty()) worse = false;
                    res.heuristic = res.heuristic || r.heuristic;
                    if (!r.passed) res.passed = false;
                    if (worse || res.worst.name.empty()) {
                        res.max_diff_log10 = std::max(res.max_diff_log10, r.abs_diff_log10);
                        res.worst = std::move(r);
                    }
                    if (!res.passed && !res.worst.error.empty()) break;
                }
            }
            sum.entries[i] = std::move(res);
        }
    };

    unsigned jobs = parallelism == 0 ? 1 : parallelism;
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    for (const EntryResult& r : sum.entries) {
        sum.total += 1;
        if (r.status == CorpusEntry::Status::disputed) sum.disputed += 1;
        else if (r.passed) sum.passed += 1;
        else sum.failed += 1;
    }
    return sum;
}

json summary_to_json(const RunSummary& s) {
    json j;
    j["schema"] = 1;
    j["prec_digits"] = s.prec.digits;
    j["seed"] = s.seed;
    j["total"] = s.total;
    j["passed"] = s.passed;
    j["failed"] = s.failed;
    j["disputed"] = s.disputed;
    json entries = json::array();
    for (const EntryResult& r : s.entries) {
        json e;
        e["name"] = r.name;
        e["mode"] = r.mode == CorpusEntry::Mode::fixed ? "fixed" : "parametric";
        e["samples"] = r.samples;
        e["passed"] = r.passed;
        e["rigor"] = r.heuristic ? "heuristic" : "rigorous";
        e["max_abs_diff"] = mag_to_sci(r.max_diff_log10);
        if (r.status == CorpusEntry::Status::disputed) e["status"] = "disputed";
        if (!r.worst.error.empty()) e["error"] = r.worst.error;
        if (!r.worst.binding.empty()) {
            json b = json::object();
            for (const auto& [k, v] : r.worst.binding) b[k] = v.to_string();
            e["worst_binding"] = std::move(b);
        }
        if (!r.worst.lhs_str.empty()) {
            e["lhs"] = r.worst.lhs_str;
            e["rhs"] = r.worst.rhs_str;
        }
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

} // namespace hyperdist
