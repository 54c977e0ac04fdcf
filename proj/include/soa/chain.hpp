#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "soa/step.hpp"

/**
 * @file chain.hpp
 * @brief The free-algebra chain and extraction of the factorisation.
 *
 * Stage `n+2` of the chain is the coequaliser in the arrow category of
 * `T(x_n) ∘ T(η_{X_n})` and `T(x_n) ∘ η_{TX_n}`. In special mode the pair
 * `T₁(x_n) ∘ λ_{X_n}`, `T₁(j_n) ∘ γ_{X_n}` is coequalised jointly with it.
 */

namespace soa {

enum class ChainMode { plain, special };

std::string to_string(ChainMode mode);
ChainMode parse_mode(const std::string& text);

/// The endofunctors a chain runs on. Cheap to copy; steps are shared.
class Engine {
  public:
    /// Plain mode over the level-one generators of `pres`.
    static Engine plain(const Presentation& pres, Budget budget = {});
    static Engine plain(Generators gens, Budget budget = {});
    /// Throws InvalidPresentation unless `pres` is a valid double presentation.
    static Engine special(const Presentation& pres, Budget budget = {});
    static Engine create(const Presentation& pres, ChainMode mode, Budget budget = {});

    ChainMode mode() const { return mode_; }
    const Budget& budget() const { return budget_; }
    const PointedEndofunctor& t1() const { return *t1_; }
    const Generators& generators() const { return t1_->generators(); }

    /// Throws std::logic_error in plain mode.
    const EndofunctorPair& level_two() const;

  private:
    Engine() = default;

    ChainMode mode_ = ChainMode::plain;
    Budget budget_;
    std::shared_ptr<const PointedEndofunctor> t1_;
    std::shared_ptr<const EndofunctorPair> pair_;
};

/// The chain `X_0 -> X_1 -> ...` with its structure maps `x_n: T X_n -> X_{n+1}`.
struct ChainTrace {
    ChainMode mode = ChainMode::plain;
    std::vector<ArrowObject> stages;
    std::vector<CommSquare> connecting; ///< `j_n^{n+1}: X_n -> X_{n+1}`
    std::vector<CommSquare> structure;  ///< `x_n: T X_n -> X_{n+1}`

    std::size_t length() const { return stages.size(); }
    bool is_iso(std::size_t n) const;
    /// `j_n^m` for `n <= m`.
    CommSquare connecting_map(std::size_t n, std::size_t m) const;
};

/// Builds a chain stage by stage.
class ChainBuilder {
  public:
    /// Uses the engine's mode.
    ChainBuilder(Engine engine, ArrowObject f);
    /// Special mode needs an engine built from a double presentation.
    ChainBuilder(Engine engine, ArrowObject f, ChainMode mode);

    const ChainTrace& trace() const { return trace_; }
    const Engine& engine() const { return engine_; }

    /// Appends the next stage.
    void extend();

  private:
    Engine engine_;
    ChainTrace trace_;
};

/// Stages `X_0 .. X_max_stage` of the chain in plain mode.
ChainTrace run_plain(const Engine& engine, const ArrowObject& f, std::size_t max_stage);
/// Stages `X_0 .. X_max_stage` of the chain in special mode.
ChainTrace run_special(const Engine& engine, const ArrowObject& f, std::size_t max_stage);
ChainTrace run_chain(const Engine& engine, const ArrowObject& f, std::size_t max_stage);

/**
 * Least `n` at which the chain is known to be constant from `n` on: `j_n^{n+1}`
 * invertible in plain mode, `j_n^{n+1}` and `j_{n+1}^{n+2}` invertible in
 * special mode.
 */
std::optional<std::size_t> detect_stabilisation(const ChainTrace& trace);

/// Violations of the chain equations at every stage the trace supports.
std::vector<std::string> chain_law_violations(const Engine& engine, const ChainTrace& trace);

/// Checks that invertibility of `j_n^{n+1}` propagates along the trace.
std::vector<std::string> propagation_violations(const ChainTrace& trace);

/// A lifting problem against `R` together with its chosen filler.
struct LiftEntry {
    std::size_t gen;
    FiniteMap sigma0;
    FiniteMap sigma1;
    FiniteMap filler;
};

struct FactorisationResult {
    ChainMode mode = ChainMode::plain;
    ArrowObject input;
    std::size_t stage = 0;
    FiniteMap L;     ///< `X -> Ef`
    ArrowObject R;   ///< `Ef -> Y`
    FiniteMap beta0; ///< top of the algebra structure `T₁R -> R`
    std::vector<LiftEntry> lift_table;

    FinSet middle() const { return R.top(); }
};

/// Throws NotStabilised unless `stage` is the detected stabilisation stage of `trace`.
FactorisationResult extract(const Engine& engine, const ChainTrace& trace, std::size_t stage);

struct FactorOutcome {
    ChainTrace trace;
    FactorisationResult result;
};

/**
 * Runs the chain until it stabilises and extracts the factorisation.
 *
 * Throws SizeBudgetExceeded if `f` has a carrier above the input budget and
 * NotStabilised, carrying the stage sizes, if no stage up to `max_stage` is
 * detected.
 */
FactorOutcome factor(const Engine& engine, const ArrowObject& f, std::size_t max_stage = 16);

/// The filler `β₀ ∘ θ(σ)` for a problem against `result.R`; throws ProblemMismatch otherwise.
FiniteMap solve_lift(const Engine& engine, const FactorisationResult& result, std::size_t gen, const CommSquare& problem);

} // namespace soa
