#include "soa/chain.hpp"

#include <stdexcept>

#include "soa/errors.hpp"

namespace soa {

std::string to_string(ChainMode mode) {
    return mode == ChainMode::plain ? "plain" : "special";
}

ChainMode parse_mode(const std::string& text) {
    if (text == "plain") {
        return ChainMode::plain;
    }
    if (text == "special") {
        return ChainMode::special;
    }
    throw ParseError("unknown chain mode '" + text + "' (expected plain or special)");
}

Engine Engine::plain(const Presentation& pres, Budget budget) {
    return plain(pres.level_one(), budget);
}

Engine Engine::plain(Generators gens, Budget budget) {
    Engine e;
    e.mode_ = ChainMode::plain;
    e.budget_ = budget;
    e.t1_ = std::make_shared<const PointedEndofunctor>(std::move(gens), budget);
    return e;
}

Engine Engine::special(const Presentation& pres, Budget budget) {
    if (!pres.is_double()) {
        throw InvalidPresentation("special mode needs vertical identities and vertical composition");
    }
    Engine e;
    e.mode_ = ChainMode::special;
    e.budget_ = budget;
    auto pair = std::make_shared<const EndofunctorPair>(pres, budget);
    // Share the level-one endofunctor so that its steps are cached once.
    e.t1_ = std::shared_ptr<const PointedEndofunctor>(pair, &pair->t1());
    e.pair_ = std::move(pair);
    return e;
}

Engine Engine::create(const Presentation& pres, ChainMode mode, Budget budget) {
    return mode == ChainMode::plain ? plain(pres, budget) : special(pres, budget);
}

const EndofunctorPair& Engine::level_two() const {
    if (!pair_) {
        throw std::logic_error("engine has no level-two endofunctor");
    }
    return *pair_;
}

bool ChainTrace::is_iso(std::size_t n) const {
    const CommSquare& j = connecting.at(n);
    return soa::is_iso(j.top()).has_value() && soa::is_iso(j.bot()).has_value();
}

CommSquare ChainTrace::connecting_map(std::size_t n, std::size_t m) const {
    if (n > m || m >= stages.size()) {
        throw std::out_of_range("connecting map " + std::to_string(n) + " -> " + std::to_string(m));
    }
    CommSquare acc = CommSquare::identity(stages[n]);
    for (std::size_t k = n; k < m; ++k) {
        acc = square_compose(connecting.at(k), acc);
    }
    return acc;
}

ChainBuilder::ChainBuilder(Engine engine, ArrowObject f) : ChainBuilder(engine, std::move(f), engine.mode()) {}

ChainBuilder::ChainBuilder(Engine engine, ArrowObject f, ChainMode mode) : engine_(std::move(engine)) {
    if (mode == ChainMode::special) {
        engine_.level_two();
    }
    trace_.mode = mode;
    trace_.stages.push_back(std::move(f));
}

void ChainBuilder::extend() {
    const PointedEndofunctor& T = engine_.t1();
    auto& tr = trace_;
    if (tr.length() == 1) {
        auto s = T.step(tr.stages[0]);
        tr.stages.push_back(s->T);
        tr.connecting.push_back(s->unit);
        tr.structure.push_back(CommSquare::identity(s->T));
        return;
    }
    const std::size_t n = tr.length() - 2;
    const ArrowObject Xn = tr.stages[n];
    const ArrowObject Xn1 = tr.stages[n + 1];
    const CommSquare xn = tr.structure[n];
    const CommSquare jn = tr.connecting[n];
    auto sn = T.step(Xn);
    auto sn1 = T.step(Xn1);
    auto stn = T.step(sn->T);

    const CommSquare Txn = T.apply(xn);
    std::vector<ParallelSquares> pairs;
    pairs.emplace_back(square_compose(Txn, T.apply(sn->unit)), square_compose(Txn, stn->unit));
    if (tr.mode == ChainMode::special) {
        const EndofunctorPair& level_two = engine_.level_two();
        pairs.emplace_back(square_compose(Txn, level_two.lambda(Xn)),
                           square_compose(T.apply(jn), level_two.gamma(Xn)));
    }
    ArrowQuotient quotient = arrow_joint_coequalizer(pairs, sn1->T);
    tr.stages.push_back(quotient.apex());
    tr.structure.push_back(quotient.projection());
    tr.connecting.push_back(square_compose(quotient.projection(), sn1->unit));
}

namespace {

ChainTrace run_with(const Engine& engine, const ArrowObject& f, std::size_t max_stage, ChainMode mode) {
    ChainBuilder builder(engine, f, mode);
    while (builder.trace().length() <= max_stage) {
        builder.extend();
    }
    return builder.trace();
}

std::vector<NotStabilised::StageSize> growth(const ChainTrace& trace) {
    std::vector<NotStabilised::StageSize> out;
    for (const auto& X : trace.stages) {
        out.push_back({X.top().size, X.bot().size});
    }
    return out;
}

} // namespace

ChainTrace run_plain(const Engine& engine, const ArrowObject& f, std::size_t max_stage) {
    return run_with(engine, f, max_stage, ChainMode::plain);
}

ChainTrace run_special(const Engine& engine, const ArrowObject& f, std::size_t max_stage) {
    return run_with(engine, f, max_stage, ChainMode::special);
}

ChainTrace run_chain(const Engine& engine, const ArrowObject& f, std::size_t max_stage) {
    return run_with(engine, f, max_stage, engine.mode());
}

std::optional<std::size_t> detect_stabilisation(const ChainTrace& trace) {
    const std::size_t needed = trace.mode == ChainMode::special ? 2 : 1;
    for (std::size_t n = 0; n + needed <= trace.connecting.size(); ++n) {
        bool all = true;
        for (std::size_t k = 0; k < needed && all; ++k) {
            all = trace.is_iso(n + k);
        }
        if (all) {
            return n;
        }
    }
    return std::nullopt;
}

std::vector<std::string> chain_law_violations(const Engine& engine, const ChainTrace& trace) {
    std::vector<std::string> out;
    const PointedEndofunctor& T = engine.t1();
    for (std::size_t n = 0; n < trace.structure.size(); ++n) {
        auto sn = T.step(trace.stages[n]);
        if (square_compose(trace.structure[n], sn->unit) != trace.connecting[n]) {
            out.push_back("x_" + std::to_string(n) + " ∘ η differs from j_" + std::to_string(n));
        }
        if (n + 1 < trace.structure.size()) {
            CommSquare lhs = square_compose(trace.structure[n + 1], T.apply(trace.connecting[n]));
            CommSquare rhs = square_compose(trace.connecting[n + 1], trace.structure[n]);
            if (lhs != rhs) {
                out.push_back("x_" + std::to_string(n + 1) + " ∘ T(j_" + std::to_string(n) + ") differs from j_" +
                              std::to_string(n + 1) + " ∘ x_" + std::to_string(n));
            }
            if (trace.mode == ChainMode::special) {
                const EndofunctorPair& two = engine.level_two();
                const CommSquare& next = trace.structure[n + 1];
                CommSquare a = square_compose(next, square_compose(T.apply(trace.structure[n]), two.lambda(trace.stages[n])));
                CommSquare b = square_compose(next, square_compose(T.apply(trace.connecting[n]), two.gamma(trace.stages[n])));
                if (a != b) {
                    out.push_back("x_" + std::to_string(n + 1) + " does not coequalise the level-two pair at stage " +
                                  std::to_string(n));
                }
            }
        }
    }
    return out;
}

std::vector<std::string> propagation_violations(const ChainTrace& trace) {
    std::vector<std::string> out;
    auto n = detect_stabilisation(trace);
    if (!n) {
        return out;
    }
    for (std::size_t m = *n; m < trace.connecting.size(); ++m) {
        if (!trace.is_iso(m)) {
            out.push_back("j_" + std::to_string(m) + " is not invertible although the chain stabilised at stage " +
                          std::to_string(*n));
        }
    }
    return out;
}

FactorisationResult extract(const Engine& engine, const ChainTrace& trace, std::size_t stage) {
    auto detected = detect_stabilisation(trace);
    if (!detected || *detected != stage) {
        throw NotStabilised("stage " + std::to_string(stage) + " is not the detected stabilisation stage", growth(trace));
    }
    FactorisationResult r;
    r.mode = trace.mode;
    r.input = trace.stages[0];
    r.stage = stage;
    r.R = trace.stages[stage];
    r.L = trace.connecting_map(0, stage).top();
    auto inverse = is_iso(trace.connecting[stage].top());
    r.beta0 = compose(*inverse, trace.structure[stage].top());

    auto sR = engine.t1().step(r.R);
    for (std::size_t p = 0; p < sR->comma.objects().size(); ++p) {
        const auto& prob = sR->comma.objects()[p];
        r.lift_table.push_back({prob.gen, prob.top(), prob.bot(), compose(r.beta0, sR->theta[p])});
    }

    if (compose(r.R.map(), r.L) != r.input.map()) {
        throw InvariantViolation("R ∘ L differs from the input");
    }
    if (!compose(r.beta0, sR->K).is_identity()) {
        throw InvariantViolation("β is not unital");
    }
    CommSquare beta(sR->T, r.R, r.beta0, FiniteMap::identity(r.R.bot()));
    if (r.mode == ChainMode::special) {
        const EndofunctorPair& two = engine.level_two();
        CommSquare lhs = square_compose(beta, two.gamma(r.R));
        CommSquare rhs = square_compose(beta, square_compose(engine.t1().apply(beta), two.lambda(r.R)));
        if (lhs != rhs) {
            throw InvariantViolation("β does not satisfy the level-two algebra law");
        }
    }
    return r;
}

FactorOutcome factor(const Engine& engine, const ArrowObject& f, std::size_t max_stage) {
    const std::size_t cap = engine.budget().max_input_carrier;
    if (f.top().size > cap || f.bot().size > cap) {
        throw SizeBudgetExceeded("input " + f.to_string() + " exceeds the carrier budget of " + std::to_string(cap));
    }
    ChainBuilder builder(engine, f);
    const std::size_t lookahead = engine.mode() == ChainMode::special ? 2 : 1;
    std::optional<std::size_t> stage;
    while (!(stage = detect_stabilisation(builder.trace())) && builder.trace().length() < max_stage + lookahead + 1) {
        builder.extend();
    }
    if (!stage) {
        throw NotStabilised("chain did not stabilise by stage " + std::to_string(max_stage), growth(builder.trace()));
    }
    return {builder.trace(), extract(engine, builder.trace(), *stage)};
}

FiniteMap solve_lift(const Engine& engine, const FactorisationResult& result, std::size_t gen, const CommSquare& problem) {
    const auto& images = engine.generators().images;
    if (gen >= images.size()) {
        throw ProblemMismatch("generator index " + std::to_string(gen) + " out of range");
    }
    if (problem.src() != images[gen]) {
        throw ProblemMismatch("problem starts at " + problem.src().to_string() + ", not at the generator " +
                              images[gen].to_string());
    }
    if (problem.dst() != result.R) {
        throw ProblemMismatch("problem ends at " + problem.dst().to_string() + ", not at R = " + result.R.to_string());
    }
    auto sR = engine.t1().step(result.R);
    return compose(result.beta0, sR->theta_of(gen, problem.top(), problem.bot()));
}

} // namespace soa
