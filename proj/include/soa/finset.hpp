#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

/**
 * @file finset.hpp
 * @brief Exact computation in the finite fragment of the category of sets.
 *
 * Sets are canonical ranges `0..size-1`. Every colimit is computed as a
 * quotient of a coproduct, and quotient classes are numbered in the order in
 * which their least member is met while scanning the carrier from 0 upwards.
 * Identical inputs therefore always yield identical tables.
 */

namespace soa {

using Elem = std::uint32_t;

/// A canonical finite set `{0, ..., size-1}`.
struct FinSet {
    std::size_t size = 0;

    auto operator<=>(const FinSet&) const = default;
};

/// A function between canonical finite sets, stored as its value table.
class FiniteMap {
  public:
    FiniteMap() = default;

    /// Throws InvalidMap if `table.size() != dom.size` or an entry is out of range.
    FiniteMap(FinSet dom, FinSet cod, std::vector<Elem> table);

    static FiniteMap identity(FinSet set);

    /// The unique map out of the empty set.
    static FiniteMap empty(FinSet cod) { return FiniteMap(FinSet{0}, cod, {}); }

    static FiniteMap constant(FinSet dom, FinSet cod, Elem value);

    FinSet dom() const { return dom_; }
    FinSet cod() const { return cod_; }
    const std::vector<Elem>& table() const { return table_; }

    Elem operator()(std::size_t x) const { return table_[x]; }

    bool is_identity() const;
    bool is_injective() const;
    bool is_surjective() const;

    bool operator==(const FiniteMap&) const = default;

    std::string to_string() const;

  private:
    FinSet dom_;
    FinSet cod_;
    std::vector<Elem> table_;
};

/// `g ∘ f`. Throws CompositionError unless `f.cod() == g.dom()`.
FiniteMap compose(const FiniteMap& g, const FiniteMap& f);

/// The two-sided inverse of `f` if it is a bijection.
std::optional<FiniteMap> is_iso(const FiniteMap& f);

/// A quotient `q: Y -> Q` together with its universal property.
class Quotient {
  public:
    Quotient() = default;
    explicit Quotient(FiniteMap projection) : projection_(std::move(projection)) {}

    FinSet apex() const { return projection_.cod(); }
    const FiniteMap& projection() const { return projection_; }

    /**
     * The unique `hbar: Q -> Z` with `hbar ∘ q = h`.
     *
     * Throws UniversalityError if `h` is not constant on some class. Throws
     * CompositionError if `h.dom()` is not the carrier of the quotient.
     */
    FiniteMap induced(const FiniteMap& h) const;

  private:
    FiniteMap projection_;
};

struct Coproduct {
    FinSet apex;
    std::vector<FiniteMap> injections;

    /// Copairing `[h_0, ..., h_k]` out of the coproduct.
    FiniteMap copair(std::span<const FiniteMap> legs, FinSet cod) const;
};

Coproduct coproduct(std::span<const FinSet> sets);

using ParallelPair = std::pair<FiniteMap, FiniteMap>;

/**
 * Joint coequaliser of parallel pairs with common codomain `cod`.
 *
 * The quotient is by the equivalence relation generated by `f(a) ~ g(a)` for
 * every pair. Throws DiagramError when a pair does not have domain equal
 * within itself or codomain equal to `cod`.
 */
Quotient joint_coequalizer(std::span<const ParallelPair> pairs, FinSet cod);

Quotient coequalizer(const FiniteMap& f, const FiniteMap& g);

/// Pushout of a span `X <-f- A -g-> B`, numbered over `X ⊔ B` in that order.
class Pushout {
  public:
    Pushout() = default;
    Pushout(Quotient quotient, Coproduct sum) : quotient_(std::move(quotient)), sum_(std::move(sum)) {}

    FinSet apex() const { return quotient_.apex(); }
    FiniteMap from_left() const { return compose(quotient_.projection(), sum_.injections[0]); }
    FiniteMap from_right() const { return compose(quotient_.projection(), sum_.injections[1]); }

    /// Unique map out of the pushout restricting to `hx` and `hb`.
    FiniteMap induced(const FiniteMap& hx, const FiniteMap& hb) const;

  private:
    Quotient quotient_;
    Coproduct sum_;
};

/// Throws DiagramError unless `f.dom() == g.dom()`.
Pushout pushout(const FiniteMap& f, const FiniteMap& g);

/**
 * A finite diagram of finite sets: vertices, edge maps, and optional
 * composition relations `edges[second] ∘ edges[first] == edges[composite]`
 * recording the composition law of the indexing category.
 */
struct Diagram {
    struct Edge {
        std::size_t src;
        std::size_t dst;
        FiniteMap map;
    };
    struct Relation {
        std::size_t first;
        std::size_t second;
        std::size_t composite;
    };

    std::vector<FinSet> vertices;
    std::vector<Edge> edges;
    std::vector<Relation> relations;
};

/// Colimit cocone of a finite diagram. Legs are jointly surjective.
class Colimit {
  public:
    Colimit() = default;
    Colimit(Quotient quotient, Coproduct sum) : quotient_(std::move(quotient)), sum_(std::move(sum)) {}

    FinSet apex() const { return quotient_.apex(); }
    std::size_t num_legs() const { return sum_.injections.size(); }
    FiniteMap leg(std::size_t vertex) const;

    /// Apex element of `x` at vertex `vertex`.
    Elem class_of(std::size_t vertex, Elem x) const;

    /// Mediating map for a cocone with one leg per vertex.
    FiniteMap induced(std::span<const FiniteMap> cocone, FinSet cod) const;

  private:
    Quotient quotient_;
    Coproduct sum_;
};

/// Throws DiagramError if an edge does not match its vertices or a relation fails.
Colimit finite_colimit(const Diagram& diagram);

/// Every map `dom -> cod` in lexicographic order of tables (first entry most significant).
std::vector<FiniteMap> all_maps(FinSet dom, FinSet cod);

/// `cod^dom`, saturating at SIZE_MAX.
std::size_t count_maps(FinSet dom, FinSet cod);

/// Calls `visit(table)` for every map `dom -> cod` in the order of all_maps() without materialising them.
template <class Visit>
void for_each_table(FinSet dom, FinSet cod, Visit&& visit) {
    if (cod.size == 0 && dom.size > 0) {
        return;
    }
    std::vector<Elem> table(dom.size, 0);
    while (true) {
        visit(static_cast<const std::vector<Elem>&>(table));
        std::size_t i = table.size();
        while (i > 0 && ++table[i - 1] == cod.size) {
            table[--i] = 0;
        }
        if (i == 0) {
            return;
        }
    }
}

} // namespace soa
