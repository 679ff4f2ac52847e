#pragma once

#include <chrono>
#include <functional>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatcert/algebra/parse.hpp"
#include "flatcert/checksum.hpp"
#include "flatcert/flatness/determinantal.hpp"
#include "flatcert/flatness/unlucky.hpp"

namespace flatcert {

enum class Tier { Required, Extended };

inline std::string to_string(Tier t) { return t == Tier::Required ? "required" : "extended"; }

struct PipelineOptions {
    Tier tier = Tier::Required;
    std::string checkpoint_path;  // stage checkpoint; completed obligations are reused from it
    bool winkler = true;          // cross-check at three odd primes outside U (n <= 4 only)
    std::size_t max_pairs = 0;    // overrides the tier cap when nonzero
    std::size_t max_coefficient_bits = 0;
    const std::atomic<bool>* interrupt = nullptr;
    std::function<void(const std::string&)> progress;  // one line per completed stage

    GroebnerOptions limits() const
    {
        GroebnerOptions o;
        o.interrupt = interrupt;
        if (tier == Tier::Required) {
            o.max_pairs = 100000;
            o.max_coefficient_bits = 20000;
        }
        if (max_pairs) o.max_pairs = max_pairs;
        if (max_coefficient_bits) o.max_coefficient_bits = max_coefficient_bits;
        return o;
    }
};

enum class NzdStatus { Discharged, Failed };

struct NzdObligation {
    Polynomial element;
    std::string role;     // "leading_coefficient" or "discriminant"
    std::string against;  // ideal the element was tested modulo
    NzdStatus status = NzdStatus::Failed;
    UnluckyPrimeReport unlucky;
    bool reverified = false;
};

/// Tests whether s is a nonzerodivisor modulo J by comparing (J : s) with J, and collects the
/// unlucky primes of the auxiliary computation. `J_basis` may pass a precomputed reduced basis.
inline NzdObligation discharge_nzd(const IdealPresentation& J, const Polynomial& s, const GroebnerOptions& opt = {},
                                   const GroebnerBasis* J_basis = nullptr)
{
    if (s.is_zero()) throw PreconditionViolation("nonzerodivisor test of the zero polynomial");
    NzdObligation ob{s, "", "", NzdStatus::Failed, {}, false};
    ob.unlucky.absorb(s);
    if (s.is_constant() || J.size() == 0) {
        // units and elements of a domain are nonzerodivisors
        ob.status = NzdStatus::Discharged;
        ob.reverified = true;
        return ob;
    }
    GroebnerOptions untracked = opt;
    untracked.track = false;
    untracked.checkpoint_path.clear();
    GroebnerBasis own;
    if (!J_basis) {
        own = buchberger(J, untracked);
        J_basis = &own;
    }
    GroebnerOptions tracked = untracked;
    tracked.track = true;
    auto qc = ideal_quotient_full(J, s, tracked);
    ob.unlucky.merge(unlucky_primes(qc.auxiliary, qc.auxiliary_basis, tracked));
    for (auto& g : qc.quotient.elements) ob.unlucky.absorb(g);
    if (!ideal_equal(qc.quotient, *J_basis)) return ob;
    for (auto& q : qc.quotient.elements)
        if (!normal_form(q * s, *J_basis).is_zero()) throw InternalError("quotient element q with q*s outside J");
    for (auto& f : J.generators())
        if (!normal_form(f, qc.quotient).is_zero()) throw InternalError("generator of J outside (J : s)");
    ob.status = NzdStatus::Discharged;
    ob.reverified = true;
    return ob;
}

enum class StepKind { Empty, Linear, Quadratic, Unclassifiable };

inline std::string to_string(StepKind k)
{
    switch (k) {
        case StepKind::Empty: return "Empty";
        case StepKind::Linear: return "Linear";
        case StepKind::Quadratic: return "Quadratic";
        default: return "Unclassifiable";
    }
}

struct ChainStep {
    std::size_t index = 0;
    std::string variable;
    StepKind kind = StepKind::Empty;
    std::size_t subset_size = 0;
    std::optional<Polynomial> witness;              // the chosen element of degree 1 or 2
    std::optional<Polynomial> leading_coefficient;  // monic
    std::optional<Polynomial> discriminant;
    std::vector<NzdObligation> obligations;
};

namespace detail {

inline bool supported_from(const Polynomial& f, std::size_t k)
{
    for (auto& t : f.terms())
        if (!t.monomial.is_one() && t.monomial.leading_variable() < k) return false;
    return true;
}

/// Preferred linear witness for J(s, n) at x_ij: the minor on rows {i} + last s and columns
/// {j} + last s when j <= n - s, and for s = 2 the (n-1, n) entry of X^2 at x_{1,n-1}.
inline std::optional<Polynomial> named_linear_witness(const DeterminantalIdealSpec& spec, const VariableTablePtr& vars,
                                                      std::size_t k)
{
    const std::string& name = vars->name(k);
    if (name.size() != 3 || name[0] != 'x') return std::nullopt;
    unsigned i = static_cast<unsigned>(name[1] - '0'), j = static_cast<unsigned>(name[2] - '0');
    auto X = symmetric_matrix(vars, spec.n);
    if (j <= spec.n - spec.s) {
        std::vector<unsigned> rows{i - 1}, cols{j - 1};
        for (unsigned t = spec.n - spec.s; t < spec.n; ++t) {
            rows.push_back(t);
            cols.push_back(t);
        }
        return minor(X, rows, cols);
    }
    if (spec.s == 2 && i == 1 && j == spec.n - 1) {
        Polynomial e(vars, CoefficientDomain::rationals());
        for (unsigned t = 0; t < spec.n; ++t) e += X[spec.n - 2][t] * X[t][spec.n - 1];
        return e;
    }
    return std::nullopt;
}

}  // namespace detail

/// Splits a reduced lex basis into the subsets G_k of elements whose leading variable is x_k
/// and classifies each one. With a spec, the named linear witnesses are preferred.
inline std::vector<ChainStep> classify_chain(const GroebnerBasis& G, const DeterminantalIdealSpec* spec = nullptr)
{
    const auto& vars = G.vars;
    std::vector<ChainStep> out;
    for (std::size_t k = 0; k < vars->size(); ++k) {
        ChainStep step;
        step.index = k;
        step.variable = vars->name(k);
        std::vector<const Polynomial*> sub;
        for (auto& g : G.elements)
            if (g.leading_monomial().leading_variable() == k) sub.push_back(&g);
        step.subset_size = sub.size();
        const Polynomial* linear = nullptr;
        for (auto* g : sub)
            if (g->degree_in(k) == 1 && (!linear || g->leading_monomial() < linear->leading_monomial())) linear = g;
        if (sub.empty()) {
            step.kind = StepKind::Empty;
        } else if (linear) {
            step.kind = StepKind::Linear;
            std::optional<Polynomial> w;
            if (spec) {
                w = detail::named_linear_witness(*spec, vars, k);
                if (w && (w->degree_in(k) != 1 || !detail::supported_from(*w, k) || !normal_form(*w, G).is_zero()))
                    w.reset();
            }
            step.witness = w ? *w : *linear;
            step.leading_coefficient = step.witness->coefficient_in(k, 1).monic();
        } else if (sub.size() == 1 && sub.front()->degree_in(k) == 2) {
            step.kind = StepKind::Quadratic;
            step.witness = *sub.front();
            step.leading_coefficient = step.witness->coefficient_in(k, 2).monic();
            step.discriminant = quadratic_discriminant(*step.witness, k);
        } else {
            step.kind = StepKind::Unclassifiable;
        }
        out.push_back(std::move(step));
    }
    return out;
}

/// Over F_2 the square root of the generator (X^2)_11 lies outside J(2, n).
struct P2Counterexample {
    std::vector<Polynomial> degree_one_basis;  // basis of the degree-1 part of J over F_2
    Polynomial witness;                        // x_11 + ... + x_1n
    Polynomial square;
    Polynomial generator;  // (X^2)_11 reduced mod 2
    bool witness_in_J = true;
    bool square_is_generator = false;
};

inline P2Counterexample p2_counterexample(const DeterminantalIdealSpec& spec)
{
    auto J = build_J(spec);
    const auto F2 = CoefficientDomain::prime_field(2);
    IdealPresentation J2(J.vars(), F2);
    for (auto& f : J.generators()) J2.add(reduce_mod_prime(f, 2));
    P2Counterexample c;
    c.degree_one_basis = graded_component(J2, 1);
    auto X = symmetric_matrix(J.vars(), spec.n);
    c.witness = Polynomial(J.vars(), F2);
    c.generator = Polynomial(J.vars(), CoefficientDomain::rationals());
    for (unsigned t = 0; t < spec.n; ++t) {
        c.witness += reduce_mod_prime(X[0][t], 2);
        c.generator += X[0][t] * X[t][0];
    }
    c.generator = reduce_mod_prime(c.generator, 2);
    c.square = c.witness * c.witness;
    c.witness_in_J = in_span(c.witness, c.degree_one_basis);
    c.square_is_generator = c.square == c.generator;
    for (auto& g : J2.generators())
        if (g == c.generator) return c;
    c.square_is_generator = false;
    return c;
}

/// Compares the mod-p image of the rational reduced basis with the basis computed over F_p.
struct WinklerCheck {
    std::vector<std::uint32_t> primes;
    std::vector<bool> agree;
    bool passed() const
    {
        if (primes.empty()) return false;
        for (bool a : agree)
            if (!a) return false;
        return true;
    }
};

inline WinklerCheck winkler_check(const IdealPresentation& F, const GroebnerBasis& G, const std::set<Integer>& U,
                                  unsigned count = 3, const GroebnerOptions& opt = {})
{
    WinklerCheck w;
    for (std::uint32_t p = 3; w.primes.size() < count; p += 2) {
        if (!is_prime(p) || U.count(Integer(p))) continue;
        IdealPresentation Fp(F.vars(), CoefficientDomain::prime_field(p));
        for (auto& f : F.generators()) Fp.add(reduce_mod_prime(f, p));
        GroebnerBasis Gp = buchberger(Fp, opt);
        std::vector<Polynomial> image;
        for (auto& g : G.elements) image.push_back(reduce_mod_prime(g, p));
        w.primes.push_back(p);
        w.agree.push_back(image == Gp.elements);
    }
    return w;
}

struct Verdict {
    enum Kind { RadicalAwayFrom, NotRadicalAt, Inconclusive } kind = Inconclusive;
    Integer prime;          // NotRadicalAt only
    std::string witness;    // NotRadicalAt only
    std::string reason;     // Inconclusive only
    std::string checkpoint; // Inconclusive after a resource limit
};

inline std::string to_string(Verdict::Kind k)
{
    switch (k) {
        case Verdict::RadicalAwayFrom: return "RadicalAwayFrom";
        case Verdict::NotRadicalAt: return "NotRadicalAt";
        default: return "Inconclusive";
    }
}

/// Process exit code for a verdict.
inline int exit_code(const Verdict& v)
{
    switch (v.kind) {
        case Verdict::RadicalAwayFrom: return 0;
        case Verdict::NotRadicalAt: return 1;
        default: return 3;
    }
}

struct RadicalityCertificate {
    std::string ideal;
    unsigned s = 0, n = 0;  // zero for raw generators
    Tier tier = Tier::Required;
    std::size_t generator_count = 0;
    std::size_t basis_size = 0;
    UnluckyPrimeReport main_unlucky;
    std::vector<ChainStep> chain;
    std::set<Integer> excluded_primes;
    std::set<Rational> excluded_raw;
    Verdict verdict;
    std::optional<P2Counterexample> counterexample_p2;
    std::optional<WinklerCheck> winkler;
    std::map<std::string, double> timings;
};

namespace detail {

inline std::string obligation_key(const NzdObligation& o)
{
    return o.role + "|" + o.against + "|" + format_poly(o.element);
}

inline nlohmann::json rationals_json(const std::set<Rational>& s)
{
    auto a = nlohmann::json::array();
    for (auto& q : s) a.push_back(to_string(q));
    return a;
}

inline nlohmann::json integers_json(const std::set<Integer>& s)
{
    auto a = nlohmann::json::array();
    for (auto& z : s) {
        if (z.fits_slong_p()) a.push_back(z.get_si());
        else a.push_back(z.get_str());
    }
    return a;
}

inline std::set<Rational> rationals_from(const nlohmann::json& a)
{
    std::set<Rational> out;
    for (auto& v : a) out.insert(parse_rational(v.get<std::string>()));
    return out;
}

inline std::set<Integer> integers_from(const nlohmann::json& a)
{
    std::set<Integer> out;
    for (auto& v : a) out.insert(v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<long>()));
    return out;
}

/// Stage checkpoint: results of completed obligations keyed by role, ideal and element.
class StageCheckpoint {
public:
    StageCheckpoint(std::string path, std::string ideal) : path_(std::move(path)), ideal_(std::move(ideal))
    {
        if (path_.empty() || !std::filesystem::exists(path_)) return;
        std::ifstream in(path_);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("unreadable checkpoint: ") + e.what(), 0);
        }
        if (j.value("kind", "") != "flatness-checkpoint" || j.value("ideal", "") != ideal_)
            throw PreconditionViolation("checkpoint belongs to a different run");
        auto body = j["obligations"];
        if (j.value("checksum", "") != fnv1a_hex(body.dump())) throw ParseError("checkpoint checksum mismatch", 0);
        for (auto& [key, v] : body.items()) entries_[key] = v;
    }

    bool lookup(NzdObligation& o) const
    {
        auto it = entries_.find(obligation_key(o));
        if (it == entries_.end()) return false;
        auto& v = it->second;
        o.status = v.at("status") == "Discharged" ? NzdStatus::Discharged : NzdStatus::Failed;
        o.reverified = v.at("reverified").get<bool>();
        o.unlucky.raw = rationals_from(v.at("raw"));
        o.unlucky.primes = integers_from(v.at("primes"));
        return true;
    }

    void record(const NzdObligation& o)
    {
        entries_[obligation_key(o)] = {{"status", o.status == NzdStatus::Discharged ? "Discharged" : "Failed"},
                                       {"reverified", o.reverified},
                                       {"raw", rationals_json(o.unlucky.raw)},
                                       {"primes", integers_json(o.unlucky.primes)}};
        save();
    }

    void save() const
    {
        if (path_.empty()) return;
        nlohmann::json body(nlohmann::json::value_t::object);
        for (auto& [k, v] : entries_) body[k] = v;
        nlohmann::json j{{"kind", "flatness-checkpoint"}, {"ideal", ideal_}, {"obligations", body},
                         {"checksum", fnv1a_hex(body.dump())}};
        write_atomically(path_, j.dump(2) + "\n");
    }

    const std::string& path() const { return path_; }

private:
    std::string path_, ideal_;
    std::map<std::string, nlohmann::json> entries_;
};

class Stopwatch {
public:
    double lap()
    {
        auto now = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Runs the elimination-chain certification on raw generators over Q. `spec`, when given,
/// selects the named linear witnesses and enables the F_2 counterexample and the Winkler check.
inline RadicalityCertificate certify_generators(const IdealPresentation& F, const std::string& label,
                                                const PipelineOptions& opt = {},
                                                const DeterminantalIdealSpec* spec = nullptr)
{
    if (!F.domain().is_rational()) throw DomainMismatch("certification works over Q");
    if (F.size() == 0) throw PreconditionViolation("no generators");
    RadicalityCertificate cert;
    cert.ideal = label;
    cert.tier = opt.tier;
    cert.generator_count = F.size();
    if (spec) {
        cert.s = spec->s;
        cert.n = spec->n;
    }
    detail::Stopwatch clock;
    auto note = [&](const std::string& line) {
        if (opt.progress) opt.progress(line);
    };
    detail::StageCheckpoint ckpt(opt.checkpoint_path, label);
    GroebnerOptions lim = opt.limits();

    auto inconclusive = [&](std::string reason, bool limit) {
        cert.verdict.kind = Verdict::Inconclusive;
        cert.verdict.reason = std::move(reason);
        if (limit && !ckpt.path().empty()) {
            ckpt.save();
            cert.verdict.checkpoint = ckpt.path();
        }
    };

    if (spec && spec->s == 2) {
        cert.counterexample_p2 = p2_counterexample(*spec);
        cert.timings["counterexample_p2"] = clock.lap();
        note("counterexample over F_2 computed");
    }

    GroebnerBasis G;
    try {
        GroebnerOptions tracked = lim;
        tracked.track = true;
        G = buchberger(F, tracked);
        cert.basis_size = G.size();
        cert.timings["basis"] = clock.lap();
        cert.main_unlucky = unlucky_primes(F, G, tracked);
        cert.timings["unlucky_primes"] = clock.lap();
        note("main basis: " + std::to_string(G.size()) + " elements");
    } catch (const ResourceLimit& e) {
        inconclusive(std::string("main basis: ") + e.what(), true);
        return cert;
    }
    cert.excluded_primes = cert.main_unlucky.primes;
    cert.excluded_raw = cert.main_unlucky.raw;

    cert.chain = classify_chain(G, spec);
    cert.timings["classification"] = clock.lap();
    for (auto& step : cert.chain)
        if (step.kind == StepKind::Unclassifiable) {
            inconclusive("chain step at " + step.variable + " is neither empty, linear nor a single quadratic", false);
            return cert;
        }

    std::vector<std::string> failures;
    std::map<std::size_t, GroebnerBasis> next_bases;
    auto run = [&](ChainStep& step, const Polynomial& element, const std::string& role, bool full) {
        const std::size_t k = step.index;
        NzdObligation ob{element, role, full ? "J" : "J_next", NzdStatus::Failed, {}, false};
        if (element.is_constant()) ob.against = "unit";
        IdealPresentation ideal = F;
        const GroebnerBasis* basis = &G;
        if (!full) {
            auto sub = elimination_subset(G, k + 1);
            if (sub.empty()) ob.against = "zero";
            ideal = IdealPresentation(F.vars(), F.domain());
            for (auto& g : sub) ideal.add(g);
            if (!next_bases.count(k)) next_bases[k] = GroebnerBasis{G.vars, G.domain, sub, sub, std::nullopt, {}};
            basis = &next_bases[k];
        }
        note("obligation " + role + " at " + step.variable + " modulo " + ob.against);
        if (!ckpt.lookup(ob)) {
            auto done = discharge_nzd(ideal, element, lim, basis);
            ob.status = done.status;
            ob.unlucky = done.unlucky;
            ob.reverified = done.reverified;
            ckpt.record(ob);
        }
        if (ob.status == NzdStatus::Failed)
            failures.push_back(format_poly(element) + " is a zero divisor modulo " + ob.against);
        cert.excluded_primes.insert(ob.unlucky.primes.begin(), ob.unlucky.primes.end());
        cert.excluded_raw.insert(ob.unlucky.raw.begin(), ob.unlucky.raw.end());
        step.obligations.push_back(std::move(ob));
    };

    for (auto& step : cert.chain) {
        try {
            if (step.kind == StepKind::Linear) {
                run(step, *step.leading_coefficient, "leading_coefficient", true);
            } else if (step.kind == StepKind::Quadratic) {
                run(step, *step.leading_coefficient, "leading_coefficient", true);
                run(step, *step.discriminant, "discriminant", false);
            }
        } catch (const ResourceLimit& e) {
            inconclusive("obligation at " + step.variable + ": " + e.what(), true);
            cert.timings["obligations"] = clock.lap();
            return cert;
        } catch (const PreconditionViolation& e) {
            inconclusive("obligation at " + step.variable + ": " + e.what(), false);
            cert.timings["obligations"] = clock.lap();
            return cert;
        }
    }
    cert.timings["obligations"] = clock.lap();

    if (!failures.empty()) {
        std::string reason;
        for (auto& f : failures) reason += (reason.empty() ? "" : "; ") + f;
        inconclusive(reason, false);
        return cert;
    }
    cert.verdict.kind = Verdict::RadicalAwayFrom;

    if (spec && spec->n <= 4 && opt.winkler) {
        cert.winkler = winkler_check(F, G, cert.excluded_primes, 3);
        cert.timings["winkler"] = clock.lap();
        if (!cert.winkler->passed()) inconclusive("mod-p image of the basis disagrees with the mod-p basis", false);
    }
    return cert;
}

inline RadicalityCertificate certify(const DeterminantalIdealSpec& spec, const PipelineOptions& opt = {})
{
    return certify_generators(build_J(spec), spec.name(), opt, &spec);
}

inline nlohmann::json to_json(const NzdObligation& o)
{
    return {{"element", format_poly(o.element)},
            {"role", o.role},
            {"modulo", o.against},
            {"status", o.status == NzdStatus::Discharged ? "Discharged" : "Failed"},
            {"reverified", o.reverified},
            {"unlucky_primes", detail::integers_json(o.unlucky.primes)},
            {"unlucky_raw", detail::rationals_json(o.unlucky.raw)}};
}

inline nlohmann::json to_json(const RadicalityCertificate& c, bool timings = false)
{
    nlohmann::json j;
    j["schema"] = "flatcert.certificate/1";
    j["ideal"] = c.ideal;
    if (c.n) {
        j["s"] = c.s;
        j["n"] = c.n;
    }
    j["tier"] = to_string(c.tier);
    j["generator_count"] = c.generator_count;
    j["basis_size"] = c.basis_size;
    nlohmann::json v{{"kind", to_string(c.verdict.kind)}};
    if (c.verdict.kind == Verdict::NotRadicalAt) {
        v["prime"] = c.verdict.prime.get_str();
        v["witness"] = c.verdict.witness;
    }
    if (c.verdict.kind == Verdict::Inconclusive) {
        v["reason"] = c.verdict.reason;
        if (!c.verdict.checkpoint.empty()) v["checkpoint"] = c.verdict.checkpoint;
    }
    j["verdict"] = v;
    j["excluded_primes"] = detail::integers_json(c.excluded_primes);
    j["excluded_raw"] = detail::rationals_json(c.excluded_raw);
    j["main_basis"] = {{"unlucky_primes", detail::integers_json(c.main_unlucky.primes)},
                       {"unlucky_raw", detail::rationals_json(c.main_unlucky.raw)},
                       {"z_rows", c.main_unlucky.z_rows},
                       {"y_rows", c.main_unlucky.y_rows},
                       {"syzygy_rows", c.main_unlucky.syzygy_rows}};
    auto chain = nlohmann::json::array();
    for (auto& s : c.chain) {
        nlohmann::json e{{"variable", s.variable}, {"kind", to_string(s.kind)}, {"subset_size", s.subset_size}};
        if (s.witness) e["witness"] = format_poly(*s.witness);
        if (s.leading_coefficient) e["leading_coefficient"] = format_poly(*s.leading_coefficient);
        if (s.discriminant) e["discriminant"] = format_poly(*s.discriminant);
        auto obs = nlohmann::json::array();
        for (auto& o : s.obligations) obs.push_back(to_json(o));
        e["obligations"] = obs;
        chain.push_back(e);
    }
    j["chain"] = chain;
    if (c.counterexample_p2) {
        auto& p = *c.counterexample_p2;
        auto basis = nlohmann::json::array();
        for (auto& b : p.degree_one_basis) basis.push_back(format_poly(b));
        j["counterexample_p2"] = {{"prime", 2},
                                  {"degree_one_basis", basis},
                                  {"witness", format_poly(p.witness)},
                                  {"square", format_poly(p.square)},
                                  {"witness_in_J", p.witness_in_J},
                                  {"square_is_generator", p.square_is_generator}};
    }
    if (c.winkler) {
        auto primes = nlohmann::json::array();
        for (auto p : c.winkler->primes) primes.push_back(p);
        j["winkler"] = {{"primes", primes}, {"passed", c.winkler->passed()}};
    }
    if (timings) {
        nlohmann::json t(nlohmann::json::value_t::object);
        for (auto& [k, s] : c.timings) t[k] = s;
        j["timings"] = t;
    }
    return j;
}

}  // namespace flatcert
