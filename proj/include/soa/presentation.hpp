#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "soa/arrow.hpp"

/**
 * @file presentation.hpp
 * @brief Finitely presented small double categories of morphisms over finite sets.
 *
 * A presentation carries a category of objects and horizontal arrows, a
 * category of vertical arrows and squares, source/target data, vertical
 * identities and vertical composition, and a realisation of all of it as
 * finite sets, maps and commuting squares. All composition laws are given as
 * total tables so that every axiom can be checked exhaustively.
 */

namespace soa {

/// A finite category given by a total composition table.
class FiniteCategory {
  public:
    struct Arrow {
        std::string name;
        std::size_t dom;
        std::size_t cod;
    };

    /// Adds an object together with its identity arrow named `identity_name`.
    std::size_t add_object(std::string name, std::string identity_name);
    std::size_t add_arrow(std::string name, std::size_t dom, std::size_t cod);

    /// Records `second ∘ first = result`.
    void set_composite(std::size_t first, std::size_t second, std::size_t result);

    std::size_t num_objects() const { return objects_.size(); }
    std::size_t num_arrows() const { return arrows_.size(); }
    const std::string& object_name(std::size_t o) const { return objects_.at(o); }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    std::size_t identity(std::size_t o) const { return identities_.at(o); }
    bool is_identity(std::size_t a) const { return identities_.at(arrows_.at(a).dom) == a; }

    std::optional<std::size_t> find_object(const std::string& name) const;
    std::optional<std::size_t> find_arrow(const std::string& name) const;

    /// `second ∘ first`, if recorded.
    std::optional<std::size_t> composite(std::size_t first, std::size_t second) const;

    const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& composites() const { return comp_; }

    /// Totality, unit and associativity violations, one line each.
    std::vector<std::string> axiom_violations() const;

  private:
    std::vector<std::string> objects_;
    std::vector<std::size_t> identities_;
    std::vector<Arrow> arrows_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp_;
};

/**
 * A small category of generators with a functor into the arrow category:
 * each object is realised as an ArrowObject, each arrow as a CommSquare.
 * This is all the pointed endofunctor construction needs.
 */
struct Generators {
    FiniteCategory shape;
    std::vector<ArrowObject> images;
    std::vector<CommSquare> square_images;

    /// Functoriality violations of the realisation.
    std::vector<std::string> violations() const;
};

/// Builds a plain presentation; throws InvalidPresentation if `U` is not a functor.
Generators from_category(FiniteCategory shape, std::vector<ArrowObject> images, std::vector<CommSquare> square_images);

/// Vertical identities and vertical composition of a double presentation.
struct VerticalStructure {
    std::vector<std::size_t> vid;        ///< per horizontal object: vertical identity
    std::vector<std::size_t> square_vid; ///< per horizontal arrow: its vertical identity square
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> vcomp;        ///< (first, second) -> composite
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> square_vcomp; ///< (upper, lower) -> composite
};

struct Violation {
    std::string axiom;
    std::string witness;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// A finitely presented double category together with its realisation in finite sets.
struct Presentation {
    FiniteCategory horizontal;
    std::vector<FinSet> object_sizes;
    std::vector<FiniteMap> hmaps;

    FiniteCategory vertical;
    std::vector<std::size_t> vsrc;
    std::vector<std::size_t> vtgt;
    std::vector<std::size_t> square_top;
    std::vector<std::size_t> square_bot;
    std::vector<FiniteMap> umaps;

    /// Absent for plain presentations (categories of morphisms).
    std::optional<VerticalStructure> vstructure;

    bool is_double() const { return vstructure.has_value(); }

    /// The realisation of a square; throws NonCommutingSquare for invalid presentations.
    CommSquare square_image(std::size_t r) const;

    /// The category of vertical arrows and squares with its realisation.
    Generators level_one() const;
};

/// Every violated axiom, with the offending names and elements.
ValidationReport validate(const Presentation& pres);

/**
 * Fills in vertical composites forced by the unit laws (composites with a
 * vertical identity) and by identity squares composing to identity squares,
 * where the presentation leaves them unspecified. Explicit
 * entries are never overwritten, so a wrong explicit entry still surfaces
 * in validate().
 */
void infer_unit_composites(Presentation& pres);

/// The category of vertically composable pairs with the realisation `U ∘ m`.
struct ComposablePairs {
    Generators generators;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;        ///< per object: (first, second)
    std::vector<std::size_t> composite;                            ///< per object: m(first, second)
    std::vector<std::pair<std::size_t, std::size_t>> square_pairs; ///< per arrow: (upper, lower)
    std::vector<std::size_t> square_composite;
};

/// Throws InvalidPresentation unless `pres` is a valid double presentation.
ComposablePairs composable_pairs(const Presentation& pres);

} // namespace soa
