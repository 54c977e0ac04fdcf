#pragma once

// Equations checked by both the unit tests and the acceptance binary. Each
// check restates the defining property directly in terms of tables.

#include <string>
#include <vector>

#include "soa/presentation.hpp"
#include "soa/step.hpp"

namespace laws {

using namespace soa;

// All commuting squares f -> g, by brute force over both tables.
inline std::vector<CommSquare> all_squares(const ArrowObject& f, const ArrowObject& g) {
    std::vector<CommSquare> out;
    for (const auto& u1 : all_maps(f.bot(), g.bot())) {
        for (const auto& u0 : all_maps(f.top(), g.top())) {
            if (compose(g.map(), u0) == compose(u1, f.map())) {
                out.emplace_back(f, g, u0, u1);
            }
        }
    }
    return out;
}

// γ ∘ η² = η¹, γ ∘ θ²_(i,j) = θ¹_m(i,j), λ ∘ η² = η¹_{T₁f} ∘ η¹_f and
// λ ∘ θ²_(i,j)(σ) = θ¹_j(θ¹_i(σ0, σ1 ∘ U(j)), σ1).
inline std::vector<std::string> gamma_lambda_violations(const Presentation& pres, const EndofunctorPair& pair,
                                                        const ArrowObject& f) {
    std::vector<std::string> out;
    const std::string at = " at " + f.to_string();
    auto s1 = pair.t1().step(f);
    auto s2 = pair.t2().step(f);
    auto s11 = pair.t1().step(s1->T);
    const CommSquare gamma = pair.gamma(f);
    const CommSquare lambda = pair.lambda(f);

    if (gamma.src() != s2->T || gamma.dst() != s1->T) {
        out.push_back("γ has the wrong boundary" + at);
        return out;
    }
    if (lambda.src() != s2->T || lambda.dst() != s11->T) {
        out.push_back("λ has the wrong boundary" + at);
        return out;
    }
    if (square_compose(gamma, s2->unit) != s1->unit) {
        out.push_back("γ ∘ η² differs from η¹" + at);
    }
    if (square_compose(lambda, s2->unit) != square_compose(s11->unit, s1->unit)) {
        out.push_back("λ ∘ η² differs from η¹η¹" + at);
    }
    const auto& cp = pair.pairs();
    const auto& problems = s2->comma.objects();
    for (std::size_t p = 0; p < problems.size(); ++p) {
        const auto& prob = problems[p];
        const auto [first, second] = cp.pairs[prob.gen];
        const std::size_t m = cp.composite[prob.gen];
        const FiniteMap& theta_m = s1->theta_of(m, prob.top(), prob.bot());
        if (compose(gamma.top(), s2->theta[p]) != theta_m) {
            out.push_back("γ ∘ θ² differs from θ¹ for problem " + std::to_string(p) + at);
        }
        const FiniteMap& inner = s1->theta_of(first, prob.top(), compose(prob.bot(), pres.umaps[second]));
        const FiniteMap& outer = s11->theta_of(second, inner, prob.bot());
        if (compose(lambda.top(), s2->theta[p]) != outer) {
            out.push_back("λ ∘ θ² differs from the nested θ¹ for problem " + std::to_string(p) + at);
        }
    }
    return out;
}

} // namespace laws
