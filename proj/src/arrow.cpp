#include "soa/arrow.hpp"

#include "soa/errors.hpp"

namespace soa {

CommSquare::CommSquare(ArrowObject src, ArrowObject dst, FiniteMap u0, FiniteMap u1)
    : src_(std::move(src)), dst_(std::move(dst)), u0_(std::move(u0)), u1_(std::move(u1)) {
    if (u0_.dom() != src_.top() || u0_.cod() != dst_.top() || u1_.dom() != src_.bot() ||
        u1_.cod() != dst_.bot()) {
        throw CompositionError("square components " + u0_.to_string() + " / " + u1_.to_string() +
                               " do not match arrows " + src_.to_string() + " -> " + dst_.to_string());
    }
    if (compose(dst_.map(), u0_) != compose(u1_, src_.map())) {
        throw NonCommutingSquare("square " + to_string() + " does not commute");
    }
}

CommSquare CommSquare::identity(const ArrowObject& a) {
    return CommSquare(a, a, FiniteMap::identity(a.top()), FiniteMap::identity(a.bot()));
}

std::string CommSquare::to_string() const {
    return "(" + u0_.to_string() + ", " + u1_.to_string() + ") : " + src_.to_string() + " => " + dst_.to_string();
}

CommSquare square_compose(const CommSquare& b, const CommSquare& a) {
    if (a.dst() != b.src()) {
        throw CompositionError("square boundary mismatch: " + a.dst().to_string() + " vs " + b.src().to_string());
    }
    return CommSquare(a.src(), b.dst(), compose(b.top(), a.top()), compose(b.bot(), a.bot()));
}

CommSquare square_compose_path(std::span<const CommSquare> path) {
    if (path.empty()) {
        throw CompositionError("empty path of squares");
    }
    CommSquare acc = path.front();
    for (std::size_t i = 1; i < path.size(); ++i) {
        acc = square_compose(path[i], acc);
    }
    return acc;
}

std::optional<CommSquare> square_inverse(const CommSquare& s) {
    auto top = is_iso(s.top());
    auto bot = is_iso(s.bot());
    if (!top || !bot) {
        return std::nullopt;
    }
    return CommSquare(s.dst(), s.src(), *top, *bot);
}

ArrowQuotient::ArrowQuotient(ArrowObject source, Quotient top, Quotient bot)
    : top_(std::move(top)), bot_(std::move(bot)) {
    apex_ = ArrowObject(top_.induced(compose(bot_.projection(), source.map())));
    projection_ = CommSquare(source, apex_, top_.projection(), bot_.projection());
}

CommSquare ArrowQuotient::induced(const CommSquare& h) const {
    if (h.src() != projection_.src()) {
        throw CompositionError("induced square must start at the quotiented arrow");
    }
    return CommSquare(apex_, h.dst(), top_.induced(h.top()), bot_.induced(h.bot()));
}

ArrowQuotient arrow_joint_coequalizer(std::span<const ParallelSquares> pairs, const ArrowObject& cod) {
    std::vector<ParallelPair> tops;
    std::vector<ParallelPair> bots;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [a, b] = pairs[k];
        if (a.src() != b.src() || a.dst() != cod || b.dst() != cod) {
            throw DiagramError("square pair " + std::to_string(k) + " is not parallel into " + cod.to_string());
        }
        tops.emplace_back(a.top(), b.top());
        bots.emplace_back(a.bot(), b.bot());
    }
    return ArrowQuotient(cod, joint_coequalizer(tops, cod.top()), joint_coequalizer(bots, cod.bot()));
}

ArrowPushout::ArrowPushout(Pushout top, Pushout bot, ArrowObject left, ArrowObject right)
    : top_(std::move(top)), bot_(std::move(bot)) {
    // The apex map is induced componentwise from the two legs.
    apex_ = ArrowObject(top_.induced(compose(bot_.from_left(), left.map()), compose(bot_.from_right(), right.map())));
    from_left_ = CommSquare(left, apex_, top_.from_left(), bot_.from_left());
    from_right_ = CommSquare(right, apex_, top_.from_right(), bot_.from_right());
}

CommSquare ArrowPushout::induced(const CommSquare& hx, const CommSquare& hb) const {
    if (hx.src() != from_left_.src() || hb.src() != from_right_.src() || hx.dst() != hb.dst()) {
        throw CompositionError("pushout cospan has the wrong boundary");
    }
    return CommSquare(apex_, hx.dst(), top_.induced(hx.top(), hb.top()), bot_.induced(hx.bot(), hb.bot()));
}

ArrowPushout arrow_pushout(const CommSquare& f, const CommSquare& g) {
    if (f.src() != g.src()) {
        throw DiagramError("arrow pushout span has mismatched apex");
    }
    return ArrowPushout(pushout(f.top(), g.top()), pushout(f.bot(), g.bot()), f.dst(), g.dst());
}

Diagram ArrowDiagram::top_component() const {
    Diagram d;
    for (const auto& v : vertices) {
        d.vertices.push_back(v.top());
    }
    for (const auto& e : edges) {
        d.edges.push_back({e.src, e.dst, e.square.top()});
    }
    d.relations = relations;
    return d;
}

Diagram ArrowDiagram::bot_component() const {
    Diagram d;
    for (const auto& v : vertices) {
        d.vertices.push_back(v.bot());
    }
    for (const auto& e : edges) {
        d.edges.push_back({e.src, e.dst, e.square.bot()});
    }
    d.relations = relations;
    return d;
}

ArrowColimit::ArrowColimit(Colimit top, Colimit bot, std::vector<ArrowObject> vertices)
    : top_(std::move(top)), bot_(std::move(bot)) {
    std::vector<FiniteMap> cocone;
    cocone.reserve(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        cocone.push_back(compose(bot_.leg(v), vertices[v].map()));
    }
    apex_ = ArrowObject(top_.induced(cocone, bot_.apex()));
    legs_.reserve(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        legs_.emplace_back(vertices[v], apex_, top_.leg(v), bot_.leg(v));
    }
}

CommSquare ArrowColimit::induced(std::span<const CommSquare> cocone, const ArrowObject& target) const {
    if (cocone.size() != legs_.size()) {
        throw CompositionError("cocone needs one square per vertex");
    }
    std::vector<FiniteMap> tops;
    std::vector<FiniteMap> bots;
    for (std::size_t v = 0; v < cocone.size(); ++v) {
        if (cocone[v].src() != legs_[v].src() || cocone[v].dst() != target) {
            throw CompositionError("cocone square " + std::to_string(v) + " has the wrong boundary");
        }
        tops.push_back(cocone[v].top());
        bots.push_back(cocone[v].bot());
    }
    return CommSquare(apex_, target, top_.induced(tops, target.top()), bot_.induced(bots, target.bot()));
}

ArrowColimit arrow_colimit(const ArrowDiagram& diagram) {
    for (std::size_t e = 0; e < diagram.edges.size(); ++e) {
        const auto& edge = diagram.edges[e];
        if (edge.src >= diagram.vertices.size() || edge.dst >= diagram.vertices.size() ||
            edge.square.src() != diagram.vertices[edge.src] || edge.square.dst() != diagram.vertices[edge.dst]) {
            throw DiagramError("arrow diagram edge " + std::to_string(e) + " does not match its endpoints");
        }
    }
    return ArrowColimit(finite_colimit(diagram.top_component()), finite_colimit(diagram.bot_component()),
                        diagram.vertices);
}

} // namespace soa
