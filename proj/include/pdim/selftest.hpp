#pragma once

// Seeded property suites behind the `selftest` command: a quick pass over the
// main invariants of every module, reported as pass counts.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pdim/brauer_generators.hpp"
#include "pdim/generators.hpp"

namespace pdim {

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
};

namespace detail {

inline SuiteResult run_suite(const std::string& name, std::size_t cases, Rng& rng,
                             const std::function<bool(Rng&)>& check) {
    SuiteResult r{name, 0, cases};
    for (std::size_t i = 0; i < cases; ++i) {
        bool ok = false;
        try {
            ok = check(rng);
        } catch (const Error&) {
            ok = false;
        }
        if (ok) ++r.passed;
    }
    return r;
}

}  // namespace detail

inline std::vector<SuiteResult> run_selftest(std::uint64_t seed, std::size_t cases = 20) {
    Rng rng(seed);
    std::vector<SuiteResult> out;
    const auto prime = [](Rng& g) { return std::vector<std::int64_t>{2, 3, 5}[uniform(g, 0, 2)]; };

    out.push_back(detail::run_suite("residue_field.pth_root", cases, rng, [&](Rng& g) {
        const std::int64_t p = prime(g);
        const RatFunc f = random_nonzero_ratfunc(g, p, 2);
        const auto r = pth_root(f.pow(p));
        return r && *r == f;
    }));
    out.push_back(detail::run_suite("residue_field.frobenius_decompose", cases, rng, [&](Rng& g) {
        const RatFunc f = random_ratfunc(g, prime(g), 2);
        return frobenius_decompose(f).reconstruct() == f;
    }));
    out.push_back(detail::run_suite("differentials.kernel_decompose", cases, rng, [&](Rng& g) {
        const std::vector<RatFunc> gens{RatFunc::variable(2, 3, 0)};
        const Omega2Form a = wedge(d(gens[0]), random_omega1(g, 2, 3));
        const auto fs = kernel_decompose(a, gens);
        return fs && expand_decomposition(gens, *fs, 2, 3) == a;
    }));
    out.push_back(detail::run_suite("milnor.dependent_pairs_vanish", cases, rng, [&](Rng& g) {
        const std::int64_t p = prime(g);
        const auto [a, b] = random_dependent_pair(g, p, 2);
        SymbolSum s(p, 2);
        s.add(a, b);
        return k2_is_zero(s);
    }));
    out.push_back(detail::run_suite("milnor.basis_pairs_nonzero", cases, rng, [&](Rng& g) {
        const std::int64_t p = prime(g);
        const auto i = static_cast<std::size_t>(uniform(g, 0, 1));
        SymbolSum s(p, 3);
        s.add(RatFunc::variable(p, 3, i), RatFunc::variable(p, 3, 2));
        return !k2_is_zero(s);
    }));
    out.push_back(detail::run_suite("cdvf.unit_layers", cases, rng, [&](Rng& g) {
        const CdvfModel m(FieldDescriptor::standard(2, static_cast<std::size_t>(uniform(g, 0, 2))));
        const TruncatedUnit u = random_unit(g, m);
        return reconstruct(unit_layers(u), m) == u;
    }));
    out.push_back(detail::run_suite("brauer.rho0_roundtrip", cases, rng, [&](Rng& g) {
        const CdvfModel m(FieldDescriptor::standard(prime(g), 2));
        const GradedDatum0 d = random_datum0(g, m);
        return datum0_equal(rho0_extract(rho0_forward(d, m)), d);
    }));
    out.push_back(detail::run_suite("brauer.normal_form", cases, rng, [&](Rng& g) {
        const CdvfModel m(FieldDescriptor::standard(2, static_cast<std::size_t>(uniform(g, 0, 2))));
        const BrauerClass c = random_br1_class(g, m);
        const NormalForm nf = normal_form(c);
        if (nf.sweeps > m.M() || !normal_form_difference_vanishes(c, nf)) return false;
        const BrauerClass nc = nf.to_class(m);
        for (const auto& pt : odd_points(m.nvars(), 20)) {
            try {
                if (hilbert_specialize(c, pt) != hilbert_specialize(nc, pt)) return false;
            } catch (const BadSpecialization&) {
            }
        }
        return true;
    }));
    return out;
}

}  // namespace pdim
