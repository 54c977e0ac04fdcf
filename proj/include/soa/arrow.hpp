#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "soa/finset.hpp"

/**
 * @file arrow.hpp
 * @brief The arrow category over finite sets.
 *
 * Objects are maps, morphisms are commuting squares, and every colimit is
 * computed pointwise on the top and bottom components.
 */

namespace soa {

/// An object `top -> bot` of the arrow category.
class ArrowObject {
  public:
    ArrowObject() = default;
    explicit ArrowObject(FiniteMap map) : map_(std::move(map)) {}

    static ArrowObject identity(FinSet set) { return ArrowObject(FiniteMap::identity(set)); }

    FinSet top() const { return map_.dom(); }
    FinSet bot() const { return map_.cod(); }
    const FiniteMap& map() const { return map_; }

    bool operator==(const ArrowObject&) const = default;

    std::string to_string() const { return map_.to_string(); }

  private:
    FiniteMap map_;
};

/**
 * A commuting square `(u0, u1): src -> dst`, i.e. `dst.map ∘ u0 == u1 ∘ src.map`.
 *
 * Construction verifies the boundary and the commutation and throws
 * NonCommutingSquare on failure.
 */
class CommSquare {
  public:
    CommSquare() = default;
    CommSquare(ArrowObject src, ArrowObject dst, FiniteMap u0, FiniteMap u1);

    static CommSquare identity(const ArrowObject& a);

    const ArrowObject& src() const { return src_; }
    const ArrowObject& dst() const { return dst_; }
    const FiniteMap& top() const { return u0_; }
    const FiniteMap& bot() const { return u1_; }

    bool is_identity() const { return src_ == dst_ && u0_.is_identity() && u1_.is_identity(); }

    bool operator==(const CommSquare&) const = default;

    std::string to_string() const;

  private:
    ArrowObject src_;
    ArrowObject dst_;
    FiniteMap u0_;
    FiniteMap u1_;
};

/// `b ∘ a`, componentwise. Throws CompositionError unless `a.dst() == b.src()`.
CommSquare square_compose(const CommSquare& b, const CommSquare& a);

/// Composes a chain of squares given in the order they are traversed.
CommSquare square_compose_path(std::span<const CommSquare> path);

/// The inverse square, present iff both components are bijections.
std::optional<CommSquare> square_inverse(const CommSquare& s);

using ParallelSquares = std::pair<CommSquare, CommSquare>;

/// Joint coequaliser in the arrow category, with its mediating-square factory.
class ArrowQuotient {
  public:
    ArrowQuotient(ArrowObject source, Quotient top, Quotient bot);

    const ArrowObject& apex() const { return apex_; }
    /// The quotient square `source -> apex`.
    const CommSquare& projection() const { return projection_; }

    /// The unique square `apex -> h.dst()` with `hbar ∘ projection == h`.
    CommSquare induced(const CommSquare& h) const;

  private:
    Quotient top_;
    Quotient bot_;
    ArrowObject apex_;
    CommSquare projection_;
};

/// Throws DiagramError when a pair is not parallel with codomain `cod`.
ArrowQuotient arrow_joint_coequalizer(std::span<const ParallelSquares> pairs, const ArrowObject& cod);

class ArrowPushout {
  public:
    ArrowPushout(Pushout top, Pushout bot, ArrowObject left, ArrowObject right);

    const ArrowObject& apex() const { return apex_; }
    const CommSquare& from_left() const { return from_left_; }
    const CommSquare& from_right() const { return from_right_; }

    CommSquare induced(const CommSquare& hx, const CommSquare& hb) const;

  private:
    Pushout top_;
    Pushout bot_;
    ArrowObject apex_;
    CommSquare from_left_;
    CommSquare from_right_;
};

ArrowPushout arrow_pushout(const CommSquare& f, const CommSquare& g);

/// A finite diagram in the arrow category; relations as in Diagram.
struct ArrowDiagram {
    struct Edge {
        std::size_t src;
        std::size_t dst;
        CommSquare square;
    };

    std::vector<ArrowObject> vertices;
    std::vector<Edge> edges;
    std::vector<Diagram::Relation> relations;

    Diagram top_component() const;
    Diagram bot_component() const;
};

class ArrowColimit {
  public:
    ArrowColimit() = default;
    ArrowColimit(Colimit top, Colimit bot, std::vector<ArrowObject> vertices);

    const ArrowObject& apex() const { return apex_; }
    const CommSquare& leg(std::size_t v) const { return legs_.at(v); }
    const Colimit& top() const { return top_; }
    const Colimit& bot() const { return bot_; }

    CommSquare induced(std::span<const CommSquare> cocone, const ArrowObject& target) const;

  private:
    Colimit top_;
    Colimit bot_;
    ArrowObject apex_;
    std::vector<CommSquare> legs_;
};

ArrowColimit arrow_colimit(const ArrowDiagram& diagram);

} // namespace soa
