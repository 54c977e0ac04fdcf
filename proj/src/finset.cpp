#include "soa/finset.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "soa/errors.hpp"

namespace soa {

namespace {

constexpr Elem kUnassigned = std::numeric_limits<Elem>::max();

class DisjointSet {
  public:
    explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return;
        }
        if (rank_[a] < rank_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        if (rank_[a] == rank_[b]) {
            ++rank_[a];
        }
    }

    /// Projection onto classes numbered by least member.
    FiniteMap canonical_projection() {
        const std::size_t n = parent_.size();
        std::vector<Elem> class_of_root(n, kUnassigned);
        std::vector<Elem> table(n);
        Elem next = 0;
        for (std::size_t x = 0; x < n; ++x) {
            auto r = find(x);
            if (class_of_root[r] == kUnassigned) {
                class_of_root[r] = next++;
            }
            table[x] = class_of_root[r];
        }
        return FiniteMap(FinSet{n}, FinSet{next}, std::move(table));
    }

  private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

} // namespace

FiniteMap::FiniteMap(FinSet dom, FinSet cod, std::vector<Elem> table)
    : dom_(dom), cod_(cod), table_(std::move(table)) {
    if (table_.size() != dom_.size) {
        throw InvalidMap("table has length " + std::to_string(table_.size()) + " but domain has size " +
                         std::to_string(dom_.size));
    }
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] >= cod_.size) {
            throw InvalidMap("entry " + std::to_string(i) + " = " + std::to_string(table_[i]) +
                             " is outside codomain of size " + std::to_string(cod_.size));
        }
    }
}

FiniteMap FiniteMap::identity(FinSet set) {
    std::vector<Elem> table(set.size);
    std::iota(table.begin(), table.end(), Elem{0});
    return FiniteMap(set, set, std::move(table));
}

FiniteMap FiniteMap::constant(FinSet dom, FinSet cod, Elem value) {
    return FiniteMap(dom, cod, std::vector<Elem>(dom.size, value));
}

bool FiniteMap::is_identity() const {
    if (dom_ != cod_) {
        return false;
    }
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] != i) {
            return false;
        }
    }
    return true;
}

bool FiniteMap::is_injective() const {
    std::vector<bool> hit(cod_.size, false);
    for (auto y : table_) {
        if (hit[y]) {
            return false;
        }
        hit[y] = true;
    }
    return true;
}

bool FiniteMap::is_surjective() const {
    std::vector<bool> hit(cod_.size, false);
    for (auto y : table_) {
        hit[y] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::string FiniteMap::to_string() const {
    std::ostringstream out;
    out << dom_.size << "->" << cod_.size << " [";
    for (std::size_t i = 0; i < table_.size(); ++i) {
        out << (i ? "," : "") << table_[i];
    }
    out << "]";
    return out.str();
}

FiniteMap compose(const FiniteMap& g, const FiniteMap& f) {
    if (f.cod() != g.dom()) {
        throw CompositionError("cannot compose " + g.to_string() + " after " + f.to_string());
    }
    std::vector<Elem> table(f.dom().size);
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i] = g(f(i));
    }
    return FiniteMap(f.dom(), g.cod(), std::move(table));
}

std::optional<FiniteMap> is_iso(const FiniteMap& f) {
    if (f.dom() != f.cod()) {
        return std::nullopt;
    }
    std::vector<Elem> inverse(f.cod().size, kUnassigned);
    for (std::size_t x = 0; x < f.dom().size; ++x) {
        auto y = f(x);
        if (inverse[y] != kUnassigned) {
            return std::nullopt;
        }
        inverse[y] = static_cast<Elem>(x);
    }
    return FiniteMap(f.cod(), f.dom(), std::move(inverse));
}

FiniteMap Quotient::induced(const FiniteMap& h) const {
    if (h.dom() != projection_.dom()) {
        throw CompositionError("induced map: " + h.to_string() + " does not start at the quotiented set of size " +
                               std::to_string(projection_.dom().size));
    }
    std::vector<Elem> table(apex().size, kUnassigned);
    for (std::size_t y = 0; y < h.dom().size; ++y) {
        auto c = projection_(y);
        if (table[c] == kUnassigned) {
            table[c] = h(y);
        } else if (table[c] != h(y)) {
            throw UniversalityError("map is not constant on class " + std::to_string(c) + " (element " +
                                    std::to_string(y) + ")");
        }
    }
    return FiniteMap(apex(), h.cod(), std::move(table));
}

FiniteMap Coproduct::copair(std::span<const FiniteMap> legs, FinSet cod) const {
    if (legs.size() != injections.size()) {
        throw CompositionError("copairing needs one leg per summand");
    }
    std::vector<Elem> table(apex.size);
    for (std::size_t k = 0; k < legs.size(); ++k) {
        const auto& inj = injections[k];
        if (legs[k].dom() != inj.dom() || legs[k].cod() != cod) {
            throw CompositionError("copairing leg " + std::to_string(k) + " has the wrong boundary");
        }
        for (std::size_t x = 0; x < inj.dom().size; ++x) {
            table[inj(x)] = legs[k](x);
        }
    }
    return FiniteMap(apex, cod, std::move(table));
}

Coproduct coproduct(std::span<const FinSet> sets) {
    Coproduct out;
    std::size_t total = 0;
    for (auto s : sets) {
        total += s.size;
    }
    out.apex = FinSet{total};
    std::size_t offset = 0;
    for (auto s : sets) {
        std::vector<Elem> table(s.size);
        std::iota(table.begin(), table.end(), static_cast<Elem>(offset));
        out.injections.emplace_back(s, out.apex, std::move(table));
        offset += s.size;
    }
    return out;
}

Quotient joint_coequalizer(std::span<const ParallelPair> pairs, FinSet cod) {
    DisjointSet dsu(cod.size);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [f, g] = pairs[k];
        if (f.dom() != g.dom() || f.cod() != cod || g.cod() != cod) {
            throw DiagramError("pair " + std::to_string(k) + " (" + f.to_string() + ", " + g.to_string() +
                               ") is not parallel into a set of size " + std::to_string(cod.size));
        }
        for (std::size_t a = 0; a < f.dom().size; ++a) {
            dsu.unite(f(a), g(a));
        }
    }
    return Quotient(dsu.canonical_projection());
}

Quotient coequalizer(const FiniteMap& f, const FiniteMap& g) {
    ParallelPair pair{f, g};
    return joint_coequalizer(std::span(&pair, 1), f.cod());
}

FiniteMap Pushout::induced(const FiniteMap& hx, const FiniteMap& hb) const {
    if (hx.cod() != hb.cod()) {
        throw CompositionError("pushout cospan legs have different codomains");
    }
    const FiniteMap legs[] = {hx, hb};
    return quotient_.induced(sum_.copair(legs, hx.cod()));
}

Pushout pushout(const FiniteMap& f, const FiniteMap& g) {
    if (f.dom() != g.dom()) {
        throw DiagramError("pushout span " + f.to_string() + ", " + g.to_string() + " has mismatched apex");
    }
    const FinSet parts[] = {f.cod(), g.cod()};
    auto sum = coproduct(parts);
    ParallelPair pair{compose(sum.injections[0], f), compose(sum.injections[1], g)};
    auto q = joint_coequalizer(std::span(&pair, 1), sum.apex);
    return Pushout(std::move(q), std::move(sum));
}

FiniteMap Colimit::leg(std::size_t vertex) const {
    return compose(quotient_.projection(), sum_.injections.at(vertex));
}

Elem Colimit::class_of(std::size_t vertex, Elem x) const {
    return quotient_.projection()(sum_.injections.at(vertex)(x));
}

FiniteMap Colimit::induced(std::span<const FiniteMap> cocone, FinSet cod) const {
    return quotient_.induced(sum_.copair(cocone, cod));
}

Colimit finite_colimit(const Diagram& diagram) {
    const auto& vs = diagram.vertices;
    for (std::size_t e = 0; e < diagram.edges.size(); ++e) {
        const auto& edge = diagram.edges[e];
        if (edge.src >= vs.size() || edge.dst >= vs.size() || edge.map.dom() != vs[edge.src] ||
            edge.map.cod() != vs[edge.dst]) {
            throw DiagramError("edge " + std::to_string(e) + " does not match its endpoints");
        }
    }
    for (const auto& rel : diagram.relations) {
        const auto n = diagram.edges.size();
        if (rel.first >= n || rel.second >= n || rel.composite >= n) {
            throw DiagramError("composition relation refers to a missing edge");
        }
        const auto& a = diagram.edges[rel.first];
        const auto& b = diagram.edges[rel.second];
        const auto& c = diagram.edges[rel.composite];
        if (a.dst != b.src || c.src != a.src || c.dst != b.dst || compose(b.map, a.map) != c.map) {
            throw DiagramError("diagram is not functorial: edge " + std::to_string(rel.second) + " after edge " +
                               std::to_string(rel.first) + " differs from edge " + std::to_string(rel.composite));
        }
    }

    auto sum = coproduct(vs);
    std::vector<ParallelPair> pairs;
    pairs.reserve(diagram.edges.size());
    for (const auto& edge : diagram.edges) {
        pairs.emplace_back(sum.injections[edge.src], compose(sum.injections[edge.dst], edge.map));
    }
    auto q = joint_coequalizer(pairs, sum.apex);
    return Colimit(std::move(q), std::move(sum));
}

std::size_t count_maps(FinSet dom, FinSet cod) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < dom.size; ++i) {
        if (cod.size != 0 && total > std::numeric_limits<std::size_t>::max() / cod.size) {
            return std::numeric_limits<std::size_t>::max();
        }
        total *= cod.size;
    }
    return total;
}

std::vector<FiniteMap> all_maps(FinSet dom, FinSet cod) {
    std::vector<FiniteMap> out;
    if (dom.size > 0 && cod.size == 0) {
        return out;
    }
    std::vector<Elem> table(dom.size, 0);
    while (true) {
        out.emplace_back(dom, cod, table);
        std::size_t i = dom.size;
        while (i > 0) {
            --i;
            if (++table[i] < cod.size) {
                break;
            }
            table[i] = 0;
            if (i == 0) {
                return out;
            }
        }
        if (dom.size == 0) {
            return out;
        }
    }
}

} // namespace soa
