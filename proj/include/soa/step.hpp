#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "soa/arrow.hpp"
#include "soa/presentation.hpp"

/**
 * @file step.hpp
 * @brief One step of the small object argument.
 *
 * For a category of generators `U: J -> C^2` and an arrow `f: X -> Y`, the
 * step enumerates every lifting problem `σ: Uj -> f`, forms the colimit `Cf`
 * of the generators over those problems, and pushes the counit `Cf -> f`
 * out along `Cf` to obtain `f = Tf ∘ Kf` through `Sf`. Each problem gets a
 * canonical filler `θ_j(σ): B_j -> Sf` against `Tf`.
 */

namespace soa {

/// Enumeration limits. `max_input_carrier` bounds user-supplied arrows;
/// `max_enumeration` bounds the number of candidate tables any single
/// enumeration may visit.
struct Budget {
    std::size_t max_input_carrier = 6;
    std::size_t max_enumeration = std::size_t{1} << 22;
};

/// Counts visited candidates and throws SizeBudgetExceeded past the limit.
class EnumerationCounter {
  public:
    EnumerationCounter(std::size_t limit, std::string what) : limit_(limit), what_(std::move(what)) {}

    void tick(std::size_t n = 1);
    std::size_t count() const { return count_; }

  private:
    std::size_t limit_;
    std::size_t count_ = 0;
    std::string what_;
};

/// A square `σ: U(gen) -> f`.
struct LiftingProblem {
    std::size_t gen;
    CommSquare square;

    const FiniteMap& top() const { return square.top(); }
    const FiniteMap& bot() const { return square.bot(); }
};

struct VectorHash {
    std::size_t operator()(const std::vector<Elem>& v) const noexcept;
};

/// Lookup key of a problem: generator index followed by both tables.
std::vector<Elem> problem_key(std::size_t gen, const FiniteMap& top, const FiniteMap& bot);

/// The comma category `U↓f`: all lifting problems and the generator squares between them.
class CommaCategory {
  public:
    struct Morphism {
        std::size_t src;
        std::size_t dst;
        std::size_t gen_arrow;
    };

    CommaCategory() = default;
    CommaCategory(ArrowObject target, std::vector<LiftingProblem> objects, std::vector<Morphism> morphisms);

    const ArrowObject& target() const { return target_; }
    const std::vector<LiftingProblem>& objects() const { return objects_; }
    const std::vector<Morphism>& morphisms() const { return morphisms_; }

    std::optional<std::size_t> find(std::size_t gen, const FiniteMap& top, const FiniteMap& bot) const;

  private:
    ArrowObject target_;
    std::vector<LiftingProblem> objects_;
    std::vector<Morphism> morphisms_;
    std::unordered_map<std::vector<Elem>, std::size_t, VectorHash> index_;
};

/**
 * Everything one application of the pointed endofunctor produces for `f`.
 *
 * `density` is the colimit `Cf` with cocone legs `ι_p` per problem, `counit`
 * is `ε_f: Cf -> f`, and `pushout` is the square of `ε_0` along `Cf`.
 */
struct StepStructure {
    ArrowObject input;
    CommaCategory comma;
    ArrowColimit density;
    CommSquare counit;
    Pushout pushout;
    FiniteMap K;
    FiniteMap q;
    ArrowObject T;
    CommSquare unit;          ///< η_f = (K, 1): f -> Tf
    CommSquare pushout_unit;  ///< (ε_0, q): Cf -> K
    std::vector<FiniteMap> theta;

    const ArrowObject& Cf() const { return density.apex(); }
    FinSet S() const { return T.top(); }

    /// θ for a problem against `input`; throws ProblemMismatch if it is not one.
    const FiniteMap& theta_of(std::size_t gen, const FiniteMap& top, const FiniteMap& bot) const;
};

/// A square `u: f -> g` with fillers `φ_p` for every problem `p` of `f`, indexed like `StepStructure::comma`.
struct OneStepLifting {
    CommSquare u;
    std::vector<FiniteMap> phi;
};

/// The pointed endofunctor `(T, η)` generated by a category of generators. Steps are memoised.
class PointedEndofunctor {
  public:
    explicit PointedEndofunctor(Generators gens, Budget budget = {});

    PointedEndofunctor(const PointedEndofunctor&) = delete;
    PointedEndofunctor& operator=(const PointedEndofunctor&) = delete;

    const Generators& generators() const { return gens_; }
    const Budget& budget() const { return budget_; }

    /// Throws SizeBudgetExceeded when the enumeration would visit too many tables.
    CommaCategory comma_category(const ArrowObject& f) const;

    std::shared_ptr<const StepStructure> step(const ArrowObject& f) const;

    /// `Tα: Tf -> Tg`.
    CommSquare apply(const CommSquare& alpha) const;

    std::size_t cache_size() const;

  private:
    std::shared_ptr<const StepStructure> compute(const ArrowObject& f) const;

    Generators gens_;
    Budget budget_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::vector<Elem>, std::shared_ptr<const StepStructure>, VectorHash> cache_;
};

/**
 * The unique square `t̂ = (t, u_1): Tf -> g` with `t̂ ∘ η_f = u` and
 * `t ∘ θ_p = φ_p` for every problem.
 *
 * Built from the colimit and pushout factories. Throws LiftingError if a
 * filler does not fill its square and NonNaturalLifting if the fillers are not
 * natural in generator squares.
 */
CommSquare mediate(const StepStructure& step, const OneStepLifting& lifting);

/// The canonical lifting `(η_f, θ)`.
OneStepLifting canonical_lifting(const StepStructure& step);

/// Violations of the defining properties of a step: pushout cospan, fillers, naturality.
std::vector<std::string> step_violations(const Generators& gens, const StepStructure& step);

/// The level-one and level-two endofunctors of a double presentation.
class EndofunctorPair {
  public:
    EndofunctorPair(const Presentation& pres, Budget budget = {});

    const PointedEndofunctor& t1() const { return *t1_; }
    const PointedEndofunctor& t2() const { return *t2_; }
    const ComposablePairs& pairs() const { return *pairs_; }

    /// `γ_f: T₂f -> T₁f`, lifting a pair against its composite.
    CommSquare gamma(const ArrowObject& f) const;

    /// `λ_f: T₂f -> T₁T₁f`, lifting a pair against its first then its second arrow.
    CommSquare lambda(const ArrowObject& f) const;

  private:
    std::shared_ptr<const ComposablePairs> pairs_;
    std::shared_ptr<PointedEndofunctor> t1_;
    std::shared_ptr<PointedEndofunctor> t2_;
};

} // namespace soa
