#pragma once

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "flatcert/algebra/parse.hpp"
#include "flatcert/checksum.hpp"
#include "flatcert/groebner/ideal.hpp"
#include "flatcert/groebner/kernel.hpp"

namespace flatcert {

struct GroebnerOptions {
    std::size_t max_pairs = 0;             // S-pair reductions allowed, 0 = unlimited
    std::size_t max_coefficient_bits = 0;  // 0 = unlimited
    bool track = false;                    // record Z with G = Z * F
    std::string checkpoint_path;           // untracked runs only
    std::size_t checkpoint_interval = 0;   // pairs between periodic checkpoints, 0 = only on limit
    bool resume = false;                   // start from checkpoint_path when it exists
    const std::atomic<bool>* interrupt = nullptr;  // polled between S-pairs; stops like a limit
};

namespace detail {

/// Writes `text` to `path` via a temporary file and rename.
inline void write_atomically(const std::string& path, const std::string& text)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp);
        out << text;
        if (!out) throw Error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

template <class Ring>
class Buchberger {
public:
    using C = typename Ring::Coef;
    using WP = WorkPoly<C>;

    Buchberger(Ring ring, const IdealPresentation& ideal, GroebnerOptions opt)
        : ring_(std::move(ring)), ideal_(ideal), opt_(std::move(opt)), nvars_(ideal.vars()->size())
    {
        if (opt_.track && !opt_.checkpoint_path.empty())
            throw PreconditionViolation("checkpointing is not available for tracked runs");
        red_opt_.max_bits = opt_.max_coefficient_bits;
    }

    GroebnerBasis run()
    {
        const auto& gens = ideal_.generators();
        if (gens.empty()) throw PreconditionViolation("buchberger needs at least one generator");
        // Smaller leading monomials first; ties keep input order.
        order_.resize(gens.size());
        for (std::size_t k = 0; k < gens.size(); ++k) order_[k] = k;
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return gens[a].leading_monomial() < gens[b].leading_monomial();
        });
        std::size_t next_input = 0;
        if (opt_.resume && !opt_.checkpoint_path.empty() && std::filesystem::exists(opt_.checkpoint_path))
            next_input = load_checkpoint();

        for (; next_input < order_.size(); ++next_input) {
            std::size_t k = order_[next_input];
            Rational scale;
            WP w = to_work(ring_, gens[k], &scale);
            std::vector<Polynomial> cof;
            if (opt_.track) {
                cof.assign(gens.size(), Polynomial(ideal_.vars(), ring_.domain()));
                cof[k] = Polynomial::constant(ideal_.vars(), ring_.domain(), scale);
            }
            reduce_and_insert(std::move(w), std::move(cof));
        }
        while (!pairs_.empty()) {
            std::size_t sel = select_pair();
            Pair pr = pairs_[sel];
            pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(sel));
            ++stats_.pairs_considered;
            if (opt_.interrupt && opt_.interrupt->load()) {
                pairs_.insert(pairs_.begin() + static_cast<std::ptrdiff_t>(sel), pr);
                limit_hit("interrupted");
            }
            if (opt_.max_pairs && stats_.pairs_reduced >= opt_.max_pairs) {
                pairs_.insert(pairs_.begin() + static_cast<std::ptrdiff_t>(sel), pr);
                limit_hit("S-pair limit of " + std::to_string(opt_.max_pairs) + " reached");
            }
            ++stats_.pairs_reduced;
            C af, ag;
            Monomial mf, mg;
            WP s = work_spoly(ring_, basis_[pr.i], basis_[pr.j], af, mf, ag, mg);
            std::vector<Polynomial> cof;
            if (opt_.track) {
                cof.resize(gens.size());
                for (std::size_t k = 0; k < gens.size(); ++k)
                    cof[k] = cofactors_[pr.i][k].times_monomial(ring_.to_rational(af), mf) -
                             cofactors_[pr.j][k].times_monomial(ring_.to_rational(ag), mg);
            }
            try {
                reduce_and_insert(std::move(s), std::move(cof));
            } catch (const ResourceLimit&) {
                pairs_.push_back(pr);
                limit_hit("coefficient size limit reached");
            }
            if (opt_.checkpoint_interval && !opt_.checkpoint_path.empty() &&
                stats_.pairs_reduced % opt_.checkpoint_interval == 0)
                save_checkpoint(order_.size());
        }
        return finalize();
    }

private:
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
    };

    [[noreturn]] void limit_hit(const std::string& why)
    {
        if (!opt_.checkpoint_path.empty()) {
            save_checkpoint(order_.size());
            throw ResourceLimit(why + "; checkpoint written to " + opt_.checkpoint_path);
        }
        throw ResourceLimit(why);
    }

    ReducerIndex active_index() const
    {
        ReducerIndex idx;
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (active_[k]) idx.add(k, basis_[k].front().m);
        return idx;
    }

    void reduce_and_insert(WP w, std::vector<Polynomial> cof)
    {
        QuotientLog log;
        WP h = reduce(ring_, std::move(w), basis_, index_, red_opt_, opt_.track ? &log : nullptr);
        if (h.empty()) {
            ++stats_.zero_reductions;
            return;
        }
        Rational c = ring_.normalize(h);
        for (auto& t : h) stats_.max_coefficient_bits = std::max(stats_.max_coefficient_bits, ring_.bits(t.c));
        if (opt_.max_coefficient_bits && stats_.max_coefficient_bits > opt_.max_coefficient_bits)
            throw ResourceLimit("coefficient size limit reached");
        if (opt_.track) apply_log(cof, log, c);
        insert(std::move(h), std::move(cof));
    }

    // cof <- c * scale * (cof - sum q_g * cof_g)
    void apply_log(std::vector<Polynomial>& cof, const QuotientLog& log, const Rational& c)
    {
        auto vars = ideal_.vars();
        for (auto& [g, terms] : log.quotients) {
            Polynomial q = Polynomial::from_terms(vars, ring_.domain(), terms);
            for (std::size_t k = 0; k < cof.size(); ++k)
                if (!cofactors_[g][k].is_zero()) cof[k] -= q * cofactors_[g][k];
        }
        Rational f = c * log.scale;
        if (f != 1)
            for (auto& p : cof) p = p.scaled(f);
    }

    // Gebauer-Moeller update
    void insert(WP h, std::vector<Polynomial> cof)
    {
        const std::size_t hi = basis_.size();
        const Monomial lh = h.front().m;
        basis_.push_back(std::move(h));
        active_.push_back(true);
        if (opt_.track) cofactors_.push_back(std::move(cof));

        std::vector<Pair> C;
        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g]) C.push_back({g, hi, lcm(basis_[g].front().m, lh)});
        std::vector<Pair> D;
        for (std::size_t a = 0; a < C.size(); ++a) {
            const Pair& p = C[a];
            bool keep = coprime(basis_[p.i].front().m, lh);
            if (!keep) {
                keep = true;
                for (std::size_t b = a + 1; b < C.size() && keep; ++b)
                    if (C[b].lcm.divides(p.lcm)) keep = false;
                for (std::size_t b = 0; b < D.size() && keep; ++b)
                    if (D[b].lcm.divides(p.lcm)) keep = false;
            }
            if (keep) D.push_back(p);
        }
        std::vector<Pair> next;
        for (auto& p : pairs_) {
            if (!lh.divides(p.lcm) || lcm(basis_[p.i].front().m, lh) == p.lcm ||
                lcm(basis_[p.j].front().m, lh) == p.lcm)
                next.push_back(p);
        }
        for (auto& p : D)
            if (!coprime(basis_[p.i].front().m, lh)) next.push_back(p);
        pairs_ = std::move(next);
        for (std::size_t g = 0; g < hi; ++g)
            if (active_[g] && lh.divides(basis_[g].front().m)) active_[g] = false;
        index_ = active_index();
        std::size_t n_active = static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true));
        stats_.max_basis_size = std::max(stats_.max_basis_size, n_active);
    }

    // Normal strategy: least lcm degree, then lex-least lcm, then pair indices.
    std::size_t select_pair() const
    {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs_.size(); ++k) {
            const Pair &a = pairs_[k], &b = pairs_[best];
            if (a.lcm.degree() != b.lcm.degree()) {
                if (a.lcm.degree() < b.lcm.degree()) best = k;
                continue;
            }
            auto c = lex_compare(a.lcm, b.lcm);
            if (c < 0 || (c == 0 && std::pair(a.i, a.j) < std::pair(b.i, b.j))) best = k;
        }
        return best;
    }

    GroebnerBasis finalize()
    {
        auto vars = ideal_.vars();
        std::vector<std::size_t> act;
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (active_[k]) act.push_back(k);
        struct Out {
            WP p;
            std::vector<Polynomial> cof;
        };
        std::vector<Out> outs;
        for (std::size_t a : act) {
            ReducerIndex idx;
            for (std::size_t b : act)
                if (b != a) idx.add(b, basis_[b].front().m);
            QuotientLog log;
            WP r = reduce(ring_, basis_[a], basis_, idx, red_opt_, opt_.track ? &log : nullptr);
            std::vector<Polynomial> cof;
            if (opt_.track) {
                cof = cofactors_[a];
                apply_log(cof, log, Rational(1));
            }
            outs.push_back({std::move(r), std::move(cof)});
        }
        std::sort(outs.begin(), outs.end(), [](const Out& x, const Out& y) { return x.p.front().m > y.p.front().m; });

        GroebnerBasis gb;
        gb.vars = vars;
        gb.domain = ring_.domain();
        gb.source = ideal_.generators();
        gb.stats = stats_;
        if (opt_.track) {
            gb.z = LiftMatrix{LiftDirection::GFromF, {}};
        }
        for (auto& o : outs) {
            Polynomial p = from_work(ring_, o.p, vars);
            Rational inv = gb.domain.inverse(p.leading_coefficient());
            gb.elements.push_back(p.monic());
            if (opt_.track) {
                for (auto& q : o.cof) q = q.scaled(inv);
                if (combine_row(o.cof, gb.source, vars, gb.domain) != gb.elements.back())
                    throw InternalError("tracked cofactors do not reproduce a basis element");
                gb.z->rows.push_back(std::move(o.cof));
            }
        }
        return gb;
    }

    nlohmann::json ring_header() const
    {
        nlohmann::json j;
        j["order"] = "lex";
        j["variables"] = ideal_.vars()->names();
        j["field"] = ring_.domain().to_string();
        return j;
    }

    void save_checkpoint(std::size_t next_input) const
    {
        nlohmann::json j = ring_header();
        j["kind"] = "buchberger-checkpoint";
        std::vector<std::string> src, basis;
        for (auto& g : ideal_.generators()) src.push_back(format_poly(g));
        for (auto& b : basis_) basis.push_back(format_poly(from_work(ring_, b, ideal_.vars())));
        j["source"] = src;
        j["elements"] = basis;
        j["active"] = active_;
        nlohmann::json pend = nlohmann::json::array();
        for (auto& p : pairs_) pend.push_back({p.i, p.j});
        j["pending_pairs"] = pend;
        j["next_input"] = next_input;
        j["pairs_considered"] = stats_.pairs_considered;
        j["pairs_reduced"] = stats_.pairs_reduced;
        j["zero_reductions"] = stats_.zero_reductions;
        j["checksum"] = fnv1a_hex(nlohmann::json(basis).dump());
        write_atomically(opt_.checkpoint_path, j.dump(1) + "\n");
    }

    std::size_t load_checkpoint()
    {
        std::ifstream in(opt_.checkpoint_path);
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.value("kind", "") != "buchberger-checkpoint" || j["field"] != ring_.domain().to_string() ||
            j["variables"] != ideal_.vars()->names())
            throw PreconditionViolation("checkpoint does not belong to this ring");
        std::vector<std::string> src;
        for (auto& g : ideal_.generators()) src.push_back(format_poly(g));
        if (j["source"].get<std::vector<std::string>>() != src)
            throw PreconditionViolation("checkpoint was written for different generators");
        auto elems = j["elements"].get<std::vector<std::string>>();
        if (fnv1a_hex(nlohmann::json(elems).dump()) != j["checksum"].get<std::string>())
            throw PreconditionViolation("checkpoint checksum mismatch");
        basis_.clear();
        for (auto& e : elems) {
            WP w = to_work(ring_, parse_poly(e, ideal_.vars(), ring_.domain()));
            basis_.push_back(std::move(w));
        }
        active_ = j["active"].get<std::vector<bool>>();
        pairs_.clear();
        for (auto& p : j["pending_pairs"]) {
            std::size_t a = p[0], b = p[1];
            pairs_.push_back({a, b, lcm(basis_[a].front().m, basis_[b].front().m)});
        }
        stats_.pairs_considered = j["pairs_considered"];
        stats_.pairs_reduced = j["pairs_reduced"];
        stats_.zero_reductions = j["zero_reductions"];
        index_ = active_index();
        return j["next_input"].get<std::size_t>();
    }

    Ring ring_;
    const IdealPresentation& ideal_;
    GroebnerOptions opt_;
    std::size_t nvars_;
    ReduceOptions red_opt_;
    std::vector<std::size_t> order_;
    std::vector<WP> basis_;
    std::vector<bool> active_;
    std::vector<std::vector<Polynomial>> cofactors_;
    std::vector<Pair> pairs_;
    ReducerIndex index_;
    GroebnerStats stats_;
};

}  // namespace detail

/// Reduced lex Groebner basis of the ideal. Over Q the fraction-free integer engine is used.
inline GroebnerBasis buchberger(const IdealPresentation& ideal, const GroebnerOptions& opt = {})
{
    if (ideal.domain().is_rational())
        return detail::Buchberger<IntegerRing>(IntegerRing{}, ideal, opt).run();
    return detail::Buchberger<ModularField>(ModularField(ideal.domain().characteristic()), ideal, opt).run();
}

inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const GroebnerOptions& opt = {})
{
    return buchberger(IdealPresentation::from(gens), opt);
}

}  // namespace flatcert
