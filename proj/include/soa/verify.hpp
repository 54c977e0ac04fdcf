#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "soa/chain.hpp"
#include "soa/errors.hpp"

/**
 * @file verify.hpp
 * @brief Exhaustive re-verification of factorisation certificates.
 *
 * Every check enumerates raw function tables. Only the construction of `T`
 * and `θ` is taken from the engine; the lifting problems, fillers and
 * compatibility conditions are recomputed here from scratch.
 */

namespace soa {

struct TraceSummary {
    std::vector<NotStabilised::StageSize> sizes;
    std::vector<bool> iso; ///< per `j_n^{n+1}`
};

TraceSummary summarise(const ChainTrace& trace);

struct Certificate {
    std::string presentation; ///< reference to the presentation file
    FactorisationResult result;
    std::optional<TraceSummary> trace;
};

Certificate make_certificate(const FactorOutcome& outcome, std::string presentation);

struct Finding {
    std::string check;
    std::string witness;
};

/// Outcome of one or more checks. Contents are deterministic for a given input.
struct Report {
    std::vector<std::string> checks;
    std::vector<std::string> skipped;
    std::vector<Finding> failures;
    std::vector<std::pair<std::string, std::size_t>> counts;

    bool ok() const { return failures.empty(); }
    void fail(std::string check, std::string witness) { failures.push_back({std::move(check), std::move(witness)}); }
    void merge(const Report& other);
    /// Whether some failure is filed under `check`.
    bool failed(const std::string& check) const;
    std::string to_string() const;
};

/// Boundaries of every map in the certificate.
Report check_well_formed(const Presentation& pres, const Certificate& cert);

/// `R ∘ L = f`, the algebra laws of `β`, the lift table against `β`, and generation of `Ef`.
Report check_algebra(const Presentation& pres, const Certificate& cert, Budget budget = {});

/**
 * Coverage, filling and horizontal compatibility of the lift table.
 *
 * The vertical condition is checked when `vertical` is set, or by default in
 * special mode. It needs a double presentation.
 */
Report check_compat(const Presentation& pres, const Certificate& cert, std::optional<bool> vertical = std::nullopt,
                    Budget budget = {});

/// Reruns the engine on the certificate's input and compares on the nose.
Report check_reproducible(const Presentation& pres, const Certificate& cert, Budget budget = {},
                          std::size_t max_stage = 16);

/// The full suite used by `soa verify`.
Report verify_certificate(const Presentation& pres, const Certificate& cert, Budget budget = {});

struct KappaOptions {
    std::size_t max_carrier = 2;
    Budget budget;
};

/**
 * Enumerates all squares `Tf -> g` and all one-step liftings `f -> g` and
 * checks that restriction along `(η, θ)` and mediation are mutually inverse.
 * Throws SizeBudgetExceeded if a carrier exceeds `max_carrier`.
 */
Report oracle_kappa(const Generators& gens, const ArrowObject& f, const ArrowObject& g, KappaOptions options = {});

/// Every arrow whose carriers have at most `max_carrier` elements, by top size, then bottom size, then table.
std::vector<ArrowObject> small_arrows(std::size_t max_carrier);

struct AlgebraTarget {
    ArrowObject g;
    FiniteMap beta0;
};

/// For each target and each square `f -> g`, counts the algebra morphisms `R -> g` extending it; each count must be 1.
Report oracle_initiality(const Presentation& pres, const Certificate& cert, std::span<const AlgebraTarget> targets,
                         Budget budget = {});

} // namespace soa
