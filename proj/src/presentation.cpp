#include "soa/presentation.hpp"

#include <sstream>

#include "soa/errors.hpp"

namespace soa {

std::size_t FiniteCategory::add_object(std::string name, std::string identity_name) {
    const auto o = objects_.size();
    objects_.push_back(std::move(name));
    const auto id = arrows_.size();
    arrows_.push_back({std::move(identity_name), o, o});
    identities_.push_back(id);
    comp_[{id, id}] = id;
    return o;
}

std::size_t FiniteCategory::add_arrow(std::string name, std::size_t dom, std::size_t cod) {
    if (dom >= objects_.size() || cod >= objects_.size()) {
        throw InvalidPresentation("arrow '" + name + "' has an unknown endpoint");
    }
    const auto a = arrows_.size();
    arrows_.push_back({std::move(name), dom, cod});
    comp_.try_emplace({identities_[dom], a}, a);
    comp_.try_emplace({a, identities_[cod]}, a);
    return a;
}

void FiniteCategory::set_composite(std::size_t first, std::size_t second, std::size_t result) {
    if (first >= arrows_.size() || second >= arrows_.size() || result >= arrows_.size()) {
        throw InvalidPresentation("composition entry refers to an unknown arrow");
    }
    comp_[{first, second}] = result;
}

std::optional<std::size_t> FiniteCategory::find_object(const std::string& name) const {
    for (std::size_t o = 0; o < objects_.size(); ++o) {
        if (objects_[o] == name) {
            return o;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> FiniteCategory::find_arrow(const std::string& name) const {
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
        if (arrows_[a].name == name) {
            return a;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> FiniteCategory::composite(std::size_t first, std::size_t second) const {
    auto it = comp_.find({first, second});
    if (it == comp_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::string> FiniteCategory::axiom_violations() const {
    std::vector<std::string> out;
    const auto n = arrows_.size();
    for (const auto& [key, result] : comp_) {
        const auto& f = arrows_[key.first];
        const auto& g = arrows_[key.second];
        const auto& h = arrows_[result];
        if (f.cod != g.dom) {
            out.push_back("composite recorded for non-composable pair (" + f.name + ", " + g.name + ")");
        } else if (h.dom != f.dom || h.cod != g.cod) {
            out.push_back("composite of (" + f.name + ", " + g.name + ") is " + h.name + " with the wrong boundary");
        }
    }
    for (std::size_t f = 0; f < n; ++f) {
        const auto& af = arrows_[f];
        if (composite(identities_[af.dom], f) != f) {
            out.push_back("left unit law fails for " + af.name);
        }
        if (composite(f, identities_[af.cod]) != f) {
            out.push_back("right unit law fails for " + af.name);
        }
        for (std::size_t g = 0; g < n; ++g) {
            if (af.cod != arrows_[g].dom) {
                continue;
            }
            auto fg = composite(f, g);
            if (!fg) {
                out.push_back("composition table has no entry for (" + af.name + ", " + arrows_[g].name + ")");
                continue;
            }
            for (std::size_t h = 0; h < n; ++h) {
                if (arrows_[g].cod != arrows_[h].dom) {
                    continue;
                }
                auto gh = composite(g, h);
                if (!gh) {
                    continue;
                }
                auto left = composite(*fg, h);
                auto right = composite(f, *gh);
                if (left && right && *left != *right) {
                    out.push_back("associativity fails for (" + af.name + ", " + arrows_[g].name + ", " +
                                  arrows_[h].name + ")");
                }
            }
        }
    }
    return out;
}

std::vector<std::string> Generators::violations() const {
    std::vector<std::string> out;
    if (images.size() != shape.num_objects() || square_images.size() != shape.num_arrows()) {
        out.push_back("realisation does not cover every object and arrow");
        return out;
    }
    for (std::size_t a = 0; a < shape.num_arrows(); ++a) {
        const auto& arr = shape.arrow(a);
        const auto& sq = square_images[a];
        if (sq.src() != images[arr.dom] || sq.dst() != images[arr.cod]) {
            out.push_back("image of " + arr.name + " has the wrong boundary");
            continue;
        }
        if (shape.is_identity(a) && !sq.is_identity()) {
            out.push_back("image of identity " + arr.name + " is not an identity square");
        }
    }
    for (const auto& [key, result] : shape.composites()) {
        const auto& sf = square_images[key.first];
        const auto& sg = square_images[key.second];
        if (sf.dst() != sg.src()) {
            continue;
        }
        if (square_compose(sg, sf) != square_images[result]) {
            out.push_back("image of " + shape.arrow(result).name + " is not the composite of the images of " +
                          shape.arrow(key.first).name + " and " + shape.arrow(key.second).name);
        }
    }
    return out;
}

Generators from_category(FiniteCategory shape, std::vector<ArrowObject> images, std::vector<CommSquare> square_images) {
    Generators gens{std::move(shape), std::move(images), std::move(square_images)};
    auto problems = gens.shape.axiom_violations();
    auto functor = gens.violations();
    problems.insert(problems.end(), functor.begin(), functor.end());
    if (!problems.empty()) {
        std::string msg = "invalid category of generators:";
        for (const auto& p : problems) {
            msg += "\n  " + p;
        }
        throw InvalidPresentation(msg);
    }
    return gens;
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto& v : violations) {
        out << v.axiom << ": " << v.witness << "\n";
    }
    return out.str();
}

CommSquare Presentation::square_image(std::size_t r) const {
    const auto& arr = vertical.arrow(r);
    return CommSquare(ArrowObject(umaps.at(arr.dom)), ArrowObject(umaps.at(arr.cod)), hmaps.at(square_top.at(r)),
                      hmaps.at(square_bot.at(r)));
}

Generators Presentation::level_one() const {
    Generators gens;
    gens.shape = vertical;
    for (const auto& u : umaps) {
        gens.images.emplace_back(u);
    }
    for (std::size_t r = 0; r < vertical.num_arrows(); ++r) {
        gens.square_images.push_back(square_image(r));
    }
    return gens;
}

namespace {

class Validator {
  public:
    explicit Validator(const Presentation& p) : p_(p) {}

    ValidationReport run() {
        if (!shapes_consistent()) {
            return std::move(report_);
        }
        check_horizontal();
        check_vertical();
        if (p_.vstructure) {
            check_identities(*p_.vstructure);
            check_composition(*p_.vstructure);
        }
        return std::move(report_);
    }

  private:
    void add(std::string axiom, std::string witness) {
        report_.violations.push_back({std::move(axiom), std::move(witness)});
    }

    const std::string& hname(std::size_t h) const { return p_.horizontal.arrow(h).name; }
    const std::string& vname(std::size_t v) const { return p_.vertical.object_name(v); }
    const std::string& sname(std::size_t r) const { return p_.vertical.arrow(r).name; }

    bool shapes_consistent() {
        const auto& H = p_.horizontal;
        const auto& V = p_.vertical;
        bool ok = true;
        if (p_.object_sizes.size() != H.num_objects() || p_.hmaps.size() != H.num_arrows()) {
            add("structure", "horizontal realisation does not cover every object and arrow");
            ok = false;
        }
        if (p_.vsrc.size() != V.num_objects() || p_.vtgt.size() != V.num_objects() ||
            p_.umaps.size() != V.num_objects() || p_.square_top.size() != V.num_arrows() ||
            p_.square_bot.size() != V.num_arrows()) {
            add("structure", "vertical data does not cover every vertical arrow and square");
            ok = false;
        }
        if (!ok) {
            return false;
        }
        for (std::size_t v = 0; v < V.num_objects(); ++v) {
            if (p_.vsrc[v] >= H.num_objects() || p_.vtgt[v] >= H.num_objects()) {
                add("structure", "vertical arrow " + vname(v) + " has an unknown endpoint");
                ok = false;
            }
        }
        for (std::size_t r = 0; r < V.num_arrows(); ++r) {
            if (p_.square_top[r] >= H.num_arrows() || p_.square_bot[r] >= H.num_arrows()) {
                add("structure", "square " + sname(r) + " has an unknown boundary");
                ok = false;
            }
        }
        if (p_.vstructure) {
            const auto& vs = *p_.vstructure;
            if (vs.vid.size() != H.num_objects() || vs.square_vid.size() != H.num_arrows()) {
                add("vertical-identity", "vertical identities are not given for every object and horizontal arrow");
                ok = false;
            }
            for (auto v : vs.vid) {
                ok = ok && v < V.num_objects();
            }
            for (auto r : vs.square_vid) {
                ok = ok && r < V.num_arrows();
            }
            for (const auto& [k, m] : vs.vcomp) {
                ok = ok && k.first < V.num_objects() && k.second < V.num_objects() && m < V.num_objects();
            }
            for (const auto& [k, m] : vs.square_vcomp) {
                ok = ok && k.first < V.num_arrows() && k.second < V.num_arrows() && m < V.num_arrows();
            }
            if (!ok && report_.violations.empty()) {
                add("structure", "vertical structure refers to unknown arrows or squares");
            }
        }
        return ok;
    }

    void check_horizontal() {
        const auto& H = p_.horizontal;
        for (auto& v : H.axiom_violations()) {
            add("horizontal-category", v);
        }
        for (std::size_t h = 0; h < H.num_arrows(); ++h) {
            const auto& a = H.arrow(h);
            const auto& m = p_.hmaps[h];
            if (m.dom() != p_.object_sizes[a.dom] || m.cod() != p_.object_sizes[a.cod]) {
                add("realisation", "map of horizontal arrow " + a.name + " does not match its endpoint sizes");
                continue;
            }
            if (H.is_identity(h) && !m.is_identity()) {
                add("realisation", "identity " + a.name + " is not realised as an identity map");
            }
        }
        for (const auto& [k, res] : H.composites()) {
            const auto& f = p_.hmaps[k.first];
            const auto& g = p_.hmaps[k.second];
            if (f.cod() != g.dom() || p_.hmaps[res].dom() != f.dom() || p_.hmaps[res].cod() != g.cod()) {
                continue;
            }
            if (compose(g, f) != p_.hmaps[res]) {
                add("realisation", "map of " + hname(res) + " is not the composite of " + hname(k.first) + " and " +
                                       hname(k.second));
            }
        }
    }

    void check_vertical() {
        const auto& H = p_.horizontal;
        const auto& V = p_.vertical;
        for (auto& v : V.axiom_violations()) {
            add("vertical-category", v);
        }
        for (std::size_t v = 0; v < V.num_objects(); ++v) {
            const auto& u = p_.umaps[v];
            if (u.dom() != p_.object_sizes[p_.vsrc[v]] || u.cod() != p_.object_sizes[p_.vtgt[v]]) {
                add("realisation", "map of vertical arrow " + vname(v) + " does not match its endpoint sizes");
            }
        }
        for (std::size_t r = 0; r < V.num_arrows(); ++r) {
            const auto& arr = V.arrow(r);
            const auto top = p_.square_top[r];
            const auto bot = p_.square_bot[r];
            if (H.arrow(top).dom != p_.vsrc[arr.dom] || H.arrow(top).cod != p_.vsrc[arr.cod] ||
                H.arrow(bot).dom != p_.vtgt[arr.dom] || H.arrow(bot).cod != p_.vtgt[arr.cod]) {
                add("source-target", "square " + arr.name + " has a boundary inconsistent with its vertical arrows");
                continue;
            }
            if (V.is_identity(r) && (!H.is_identity(top) || !H.is_identity(bot))) {
                add("source-target", "identity square " + arr.name + " has a non-identity boundary");
            }
            try {
                (void)p_.square_image(r);
            } catch (const Error&) {
                add("realisation", "square " + arr.name + " does not commute");
            }
        }
        for (const auto& [k, res] : V.composites()) {
            if (V.arrow(k.first).cod != V.arrow(k.second).dom) {
                continue;
            }
            if (H.composite(p_.square_top[k.first], p_.square_top[k.second]) != p_.square_top[res] ||
                H.composite(p_.square_bot[k.first], p_.square_bot[k.second]) != p_.square_bot[res]) {
                add("source-target", "boundary of " + sname(res) + " is not the composite of the boundaries of " +
                                         sname(k.first) + " and " + sname(k.second));
            }
        }
    }

    void check_identities(const VerticalStructure& vs) {
        const auto& H = p_.horizontal;
        const auto& V = p_.vertical;
        for (std::size_t o = 0; o < H.num_objects(); ++o) {
            const auto e = vs.vid[o];
            if (p_.vsrc[e] != o || p_.vtgt[e] != o) {
                add("vertical-identity", "e(" + H.object_name(o) + ") = " + vname(e) + " is not an endo-arrow on " +
                                             H.object_name(o));
                continue;
            }
            if (!p_.umaps[e].is_identity()) {
                add("vertical-identity", "e(" + H.object_name(o) + ") = " + vname(e) +
                                             " is not realised as an identity map");
            }
        }
        for (std::size_t h = 0; h < H.num_arrows(); ++h) {
            const auto r = vs.square_vid[h];
            const auto& a = H.arrow(h);
            const auto& sq = V.arrow(r);
            if (sq.dom != vs.vid[a.dom] || sq.cod != vs.vid[a.cod] || p_.square_top[r] != h ||
                p_.square_bot[r] != h) {
                add("vertical-identity", "e(" + a.name + ") = " + sq.name +
                                             " is not a square between vertical identities bounded by " + a.name);
            }
            if (H.is_identity(h) && r != V.identity(vs.vid[a.dom])) {
                add("vertical-identity", "e(" + a.name + ") is not the identity square of e(" +
                                             H.object_name(a.dom) + ")");
            }
        }
        for (const auto& [k, res] : H.composites()) {
            if (H.arrow(k.first).cod != H.arrow(k.second).dom) {
                continue;
            }
            if (V.composite(vs.square_vid[k.first], vs.square_vid[k.second]) != vs.square_vid[res]) {
                add("vertical-identity", "e does not preserve the composite " + hname(res));
            }
        }
    }

    void check_composition(const VerticalStructure& vs) {
        const auto& V = p_.vertical;
        const auto nv = V.num_objects();
        auto composable = [&](std::size_t i, std::size_t j) { return p_.vtgt[i] == p_.vsrc[j]; };
        auto m = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
            auto it = vs.vcomp.find({i, j});
            if (it == vs.vcomp.end()) {
                return std::nullopt;
            }
            return it->second;
        };
        for (const auto& [k, res] : vs.vcomp) {
            if (!composable(k.first, k.second)) {
                add("vertical-composition", "m(" + vname(k.first) + ", " + vname(k.second) +
                                                ") is given for a non-composable pair");
            }
        }
        for (std::size_t i = 0; i < nv; ++i) {
            for (std::size_t j = 0; j < nv; ++j) {
                if (!composable(i, j)) {
                    continue;
                }
                auto ij = m(i, j);
                const auto pair = "(" + vname(i) + ", " + vname(j) + ")";
                if (!ij) {
                    add("vertical-composition", "no composite given for " + pair);
                    continue;
                }
                if (p_.vsrc[*ij] != p_.vsrc[i] || p_.vtgt[*ij] != p_.vtgt[j]) {
                    add("vertical-composition", "m" + pair + " = " + vname(*ij) + " has the wrong endpoints");
                    continue;
                }
                if (compose(p_.umaps[j], p_.umaps[i]) != p_.umaps[*ij]) {
                    add("realisation", "map of m" + pair + " = " + vname(*ij) +
                                           " is not the composite of the maps of " + vname(i) + " and " + vname(j));
                }
                for (std::size_t k = 0; k < nv; ++k) {
                    if (!composable(j, k)) {
                        continue;
                    }
                    auto jk = m(j, k);
                    if (!jk) {
                        continue;
                    }
                    auto left = m(*ij, k);
                    auto right = m(i, *jk);
                    if (left && right && *left != *right) {
                        add("vertical-composition", "associativity fails for (" + vname(i) + ", " + vname(j) + ", " +
                                                        vname(k) + ")");
                    }
                }
            }
        }
        for (std::size_t i = 0; i < nv; ++i) {
            if (m(vs.vid[p_.vsrc[i]], i) != i || m(i, vs.vid[p_.vtgt[i]]) != i) {
                add("vertical-composition", "unit law fails for " + vname(i));
            }
        }

        const auto nr = V.num_arrows();
        auto sq_composable = [&](std::size_t r, std::size_t s) { return p_.square_bot[r] == p_.square_top[s]; };
        auto sm = [&](std::size_t r, std::size_t s) -> std::optional<std::size_t> {
            auto it = vs.square_vcomp.find({r, s});
            if (it == vs.square_vcomp.end()) {
                return std::nullopt;
            }
            return it->second;
        };
        for (std::size_t r = 0; r < nr; ++r) {
            for (std::size_t s = 0; s < nr; ++s) {
                if (!sq_composable(r, s)) {
                    continue;
                }
                const auto pair = "(" + sname(r) + ", " + sname(s) + ")";
                auto rs = sm(r, s);
                if (!rs) {
                    add("vertical-composition", "no composite given for squares " + pair);
                    continue;
                }
                const auto& ar = V.arrow(r);
                const auto& as = V.arrow(s);
                const auto& ars = V.arrow(*rs);
                if (ars.dom != m(ar.dom, as.dom) || ars.cod != m(ar.cod, as.cod) ||
                    p_.square_top[*rs] != p_.square_top[r] || p_.square_bot[*rs] != p_.square_bot[s]) {
                    add("vertical-composition", "m" + pair + " = " + sname(*rs) + " has the wrong boundary");
                }
                if (V.is_identity(r) && V.is_identity(s)) {
                    auto mid = m(ar.dom, as.dom);
                    if (mid && *rs != V.identity(*mid)) {
                        add("vertical-composition", "m does not preserve the identity square pair " + pair);
                    }
                }
            }
        }
        // m is a functor on squares: m((r2, s2) ∘ (r1, s1)) = m(r2, s2) ∘ m(r1, s1).
        for (const auto& [k1, r12] : V.composites()) {
            for (const auto& [k2, s12] : V.composites()) {
                const auto [r1, r2] = k1;
                const auto [s1, s2] = k2;
                if (V.arrow(r1).cod != V.arrow(r2).dom || V.arrow(s1).cod != V.arrow(s2).dom) {
                    continue;
                }
                if (!sq_composable(r1, s1) || !sq_composable(r2, s2)) {
                    continue;
                }
                auto a = sm(r1, s1);
                auto b = sm(r2, s2);
                auto ab = sm(r12, s12);
                if (!a || !b || !ab) {
                    continue;
                }
                if (V.arrow(*a).cod != V.arrow(*b).dom) {
                    continue;
                }
                if (V.composite(*a, *b) != *ab) {
                    add("vertical-composition", "m does not preserve the composite of (" + sname(r1) + ", " +
                                                    sname(s1) + ") and (" + sname(r2) + ", " + sname(s2) + ")");
                }
            }
        }
        // Unit and associativity laws on squares.
        for (std::size_t r = 0; r < nr; ++r) {
            const auto top = p_.square_top[r];
            const auto bot = p_.square_bot[r];
            if (sm(vs.square_vid[top], r) != r || sm(r, vs.square_vid[bot]) != r) {
                add("vertical-composition", "unit law fails for square " + sname(r));
            }
            for (std::size_t s = 0; s < nr; ++s) {
                if (!sq_composable(r, s)) {
                    continue;
                }
                auto rs = sm(r, s);
                for (std::size_t t = 0; t < nr && rs; ++t) {
                    if (!sq_composable(s, t)) {
                        continue;
                    }
                    auto st = sm(s, t);
                    if (!st) {
                        continue;
                    }
                    auto left = sm(*rs, t);
                    auto right = sm(r, *st);
                    if (left && right && *left != *right) {
                        add("vertical-composition", "associativity fails for squares (" + sname(r) + ", " +
                                                        sname(s) + ", " + sname(t) + ")");
                    }
                }
            }
        }
    }

    const Presentation& p_;
    ValidationReport report_;
};

} // namespace

ValidationReport validate(const Presentation& pres) {
    return Validator(pres).run();
}

void infer_unit_composites(Presentation& pres) {
    if (!pres.vstructure) {
        return;
    }
    auto& vs = *pres.vstructure;
    const auto& H = pres.horizontal;
    const auto& V = pres.vertical;
    if (vs.vid.size() != H.num_objects() || vs.square_vid.size() != H.num_arrows()) {
        return;
    }
    std::vector<bool> is_vid(V.num_objects(), false);
    for (auto v : vs.vid) {
        if (v < is_vid.size()) {
            is_vid[v] = true;
        }
    }
    std::vector<bool> is_square_vid(V.num_arrows(), false);
    for (auto r : vs.square_vid) {
        if (r < is_square_vid.size()) {
            is_square_vid[r] = true;
        }
    }
    for (std::size_t i = 0; i < V.num_objects(); ++i) {
        for (std::size_t j = 0; j < V.num_objects(); ++j) {
            if (pres.vtgt[i] != pres.vsrc[j] || vs.vcomp.count({i, j})) {
                continue;
            }
            if (is_vid[i] && vs.vid[pres.vsrc[j]] == i) {
                vs.vcomp[{i, j}] = j;
            } else if (is_vid[j] && vs.vid[pres.vtgt[i]] == j) {
                vs.vcomp[{i, j}] = i;
            }
        }
    }
    for (const auto& [pair, k] : vs.vcomp) {
        if (pair.first < V.num_objects() && pair.second < V.num_objects() && k < V.num_objects()) {
            vs.square_vcomp.try_emplace({V.identity(pair.first), V.identity(pair.second)}, V.identity(k));
        }
    }
    for (std::size_t r = 0; r < V.num_arrows(); ++r) {
        for (std::size_t s = 0; s < V.num_arrows(); ++s) {
            if (pres.square_bot[r] != pres.square_top[s] || vs.square_vcomp.count({r, s})) {
                continue;
            }
            if (is_square_vid[r] && vs.square_vid[pres.square_top[s]] == r) {
                vs.square_vcomp[{r, s}] = s;
            } else if (is_square_vid[s] && vs.square_vid[pres.square_bot[r]] == s) {
                vs.square_vcomp[{r, s}] = r;
            }
        }
    }
}

ComposablePairs composable_pairs(const Presentation& pres) {
    if (!pres.is_double()) {
        throw InvalidPresentation("composable pairs need a double presentation (vertical identities and composition)");
    }
    auto report = validate(pres);
    if (!report.ok()) {
        throw InvalidPresentation("invalid presentation:\n" + report.to_string());
    }
    const auto& V = pres.vertical;
    const auto& vs = *pres.vstructure;

    ComposablePairs out;
    auto& shape = out.generators.shape;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> object_index;
    for (std::size_t i = 0; i < V.num_objects(); ++i) {
        for (std::size_t j = 0; j < V.num_objects(); ++j) {
            if (pres.vtgt[i] != pres.vsrc[j]) {
                continue;
            }
            const auto name = "(" + V.object_name(i) + "," + V.object_name(j) + ")";
            auto o = shape.add_object(name, "1_" + name);
            object_index[{i, j}] = o;
            out.pairs.emplace_back(i, j);
            out.composite.push_back(vs.vcomp.at({i, j}));
        }
    }
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> arrow_index;
    for (std::size_t o = 0; o < out.pairs.size(); ++o) {
        arrow_index[{V.identity(out.pairs[o].first), V.identity(out.pairs[o].second)}] = shape.identity(o);
    }
    for (std::size_t r = 0; r < V.num_arrows(); ++r) {
        for (std::size_t s = 0; s < V.num_arrows(); ++s) {
            if (pres.square_bot[r] != pres.square_top[s] || arrow_index.count({r, s})) {
                continue;
            }
            const auto dom = object_index.at({V.arrow(r).dom, V.arrow(s).dom});
            const auto cod = object_index.at({V.arrow(r).cod, V.arrow(s).cod});
            auto a = shape.add_arrow("(" + V.arrow(r).name + "," + V.arrow(s).name + ")", dom, cod);
            arrow_index[{r, s}] = a;
        }
    }
    out.square_pairs.resize(shape.num_arrows());
    out.square_composite.resize(shape.num_arrows());
    for (const auto& [key, a] : arrow_index) {
        out.square_pairs[a] = key;
        out.square_composite[a] = vs.square_vcomp.at(key);
    }
    for (const auto& [key1, a1] : arrow_index) {
        for (const auto& [key2, a2] : arrow_index) {
            if (shape.arrow(a1).cod != shape.arrow(a2).dom) {
                continue;
            }
            auto r = V.composite(key1.first, key2.first);
            auto s = V.composite(key1.second, key2.second);
            shape.set_composite(a1, a2, arrow_index.at({*r, *s}));
        }
    }

    for (std::size_t o = 0; o < out.pairs.size(); ++o) {
        out.generators.images.emplace_back(pres.umaps[out.composite[o]]);
    }
    for (std::size_t a = 0; a < shape.num_arrows(); ++a) {
        out.generators.square_images.push_back(pres.square_image(out.square_composite[a]));
    }
    return out;
}

} // namespace soa
