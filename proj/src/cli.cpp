#include "soa/cli.hpp"

#include <ostream>
#include <random>

#include "soa/json_io.hpp"

namespace soa {

namespace {

void emit(const JobSpec& job, std::ostream& out, const Json& value) {
    if (job.out.empty()) {
        out << dump(value);
    } else {
        save_json(job.out, value);
    }
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) {
        throw ParseError(std::string("missing required option ") + flag);
    }
}

ChainMode mode_for(const JobSpec& job, const Presentation& pres) {
    ChainMode mode = job.mode.value_or(ChainMode::plain);
    if (mode == ChainMode::special && !pres.is_double()) {
        throw InvalidPresentation("--mode special needs a presentation with vid and vcomp");
    }
    return mode;
}

ExitCode finish(const Report& report, const JobSpec& job, std::ostream& out, std::ostream& err) {
    emit(job, out, to_json(report));
    err << report.to_string();
    return report.ok() ? ExitCode::ok : ExitCode::failure;
}

ExitCode validate_job(const JobSpec& job, std::ostream& out) {
    require(job.presentation, "--presentation");
    Presentation pres = load_presentation(job.presentation);
    out << "valid " << (pres.is_double() ? "double" : "plain") << " presentation: " << pres.horizontal.num_objects()
        << " objects, " << pres.horizontal.num_arrows() << " horizontal arrows, " << pres.vertical.num_objects()
        << " vertical arrows, " << pres.vertical.num_arrows() << " squares\n";
    return ExitCode::ok;
}

ExitCode factor_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
    require(job.presentation, "--presentation");
    require(job.map, "--map");
    Presentation pres = load_presentation(job.presentation);
    ArrowObject f = arrow_from_json(load_json(job.map));
    Engine engine = Engine::create(pres, mode_for(job, pres), job.budget);
    try {
        FactorOutcome outcome = factor(engine, f, job.max_stage);
        Certificate cert = make_certificate(outcome, job.presentation);
        emit(job, out, to_json(cert, pres));
        if (!job.trace.empty()) {
            Json t = to_json(*cert.trace);
            t["mode"] = to_string(outcome.trace.mode);
            Json arrows = Json::array();
            for (const auto& X : outcome.trace.stages) {
                arrows.push_back(to_json(X));
            }
            t["arrows"] = arrows;
            save_json(job.trace, t);
        }
        err << "stabilised at stage " << outcome.result.stage << " (" << to_string(outcome.result.mode)
            << "), |Ef| = " << outcome.result.R.top().size << ", " << outcome.result.lift_table.size()
            << " lifting problems\n";
        return ExitCode::ok;
    } catch (const NotStabilised& e) {
        Json g = Json::object();
        g["error"] = "not stabilised";
        g["max_stage"] = job.max_stage;
        Json stages = Json::array();
        for (const auto& s : e.growth()) {
            Json row = Json::object();
            row["top"] = s.top;
            row["bot"] = s.bot;
            stages.push_back(row);
        }
        g["stages"] = stages;
        if (!job.trace.empty()) {
            save_json(job.trace, g);
        }
        err << e.what() << "\n  top carrier sizes per stage:";
        for (const auto& s : e.growth()) {
            err << " " << s.top;
        }
        err << "\n";
        return ExitCode::not_stabilised;
    }
}

ExitCode lift_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
    require(job.presentation, "--presentation");
    require(job.certificate, "--certificate");
    require(job.problem, "--problem");
    Presentation pres = load_presentation(job.presentation);
    Certificate cert = certificate_from_json(load_json(job.certificate), pres);
    Engine engine = Engine::create(pres, cert.result.mode, job.budget);
    std::size_t gen = 0;
    CommSquare problem = problem_from_json(load_json(job.problem), pres, cert.result.R, gen);
    FiniteMap filler = solve_lift(engine, cert.result, gen, problem);
    Json j = Json::object();
    j["gen"] = pres.vertical.object_name(gen);
    j["filler"] = to_json(filler);
    emit(job, out, j);
    err << "filler " << filler.to_string() << "\n";
    return ExitCode::ok;
}

ExitCode verify_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
    require(job.presentation, "--presentation");
    require(job.certificate, "--certificate");
    Presentation pres = load_presentation(job.presentation);
    Report report;
    try {
        Certificate cert = certificate_from_json(load_json(job.certificate), pres);
        report = verify_certificate(pres, cert, job.budget);
    } catch (const ParseError& e) {
        report.checks.push_back("well-formed");
        report.fail("well-formed", e.what());
    }
    return finish(report, job, out, err);
}

std::vector<AlgebraTarget> load_targets(const Json& j) {
    const Json& list = j.is_object() && j.contains("targets") ? j["targets"] : j;
    if (!list.is_array()) {
        throw ParseError("targets: expected an array of {g, beta0}");
    }
    std::vector<AlgebraTarget> out;
    for (const auto& t : list) {
        if (!t.is_object() || !t.contains("g") || !t.contains("beta0")) {
            throw ParseError("targets: each entry needs \"g\" and \"beta0\"");
        }
        out.push_back({arrow_from_json(t["g"]), map_from_json(t["beta0"])});
    }
    return out;
}

ExitCode oracle_job(const JobSpec& job, std::ostream& out, std::ostream& err) {
    require(job.presentation, "--presentation");
    Presentation pres = load_presentation(job.presentation);
    if (job.oracle_kind == "initiality") {
        require(job.certificate, "--certificate");
        Certificate cert = certificate_from_json(load_json(job.certificate), pres);
        std::vector<AlgebraTarget> targets;
        if (job.target.empty()) {
            targets.push_back({cert.result.R, cert.result.beta0});
        } else {
            targets = load_targets(load_json(job.target));
        }
        return finish(oracle_initiality(pres, cert, targets, job.budget), job, out, err);
    }
    if (job.oracle_kind != "kappa") {
        throw ParseError("unknown oracle kind '" + job.oracle_kind + "' (expected kappa or initiality)");
    }
    const Generators gens = pres.level_one();
    const KappaOptions options{job.max_carrier, job.budget};
    if (!job.map.empty() || !job.target.empty()) {
        require(job.map, "--map");
        require(job.target, "--target");
        return finish(oracle_kappa(gens, arrow_from_json(load_json(job.map)), arrow_from_json(load_json(job.target)), options),
                      job, out, err);
    }
    // Every pair of small arrows, or a seeded sample of them.
    const auto arrows = small_arrows(job.max_carrier);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (job.samples == 0) {
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            for (std::size_t k = 0; k < arrows.size(); ++k) {
                pairs.emplace_back(i, k);
            }
        }
    } else {
        std::mt19937_64 rng(job.seed);
        std::uniform_int_distribution<std::size_t> pick(0, arrows.size() - 1);
        for (std::size_t s = 0; s < job.samples; ++s) {
            pairs.emplace_back(pick(rng), pick(rng));
        }
    }
    Report total;
    std::size_t passed = 0;
    for (const auto& [i, k] : pairs) {
        Report r = oracle_kappa(gens, arrows[i], arrows[k], options);
        passed += r.ok() ? 1 : 0;
        for (const auto& f : r.failures) {
            total.fail(f.check, arrows[i].to_string() + " vs " + arrows[k].to_string() + ": " + f.witness);
        }
    }
    total.checks.push_back("kappa-bijection");
    total.counts.emplace_back("pairs", pairs.size());
    total.counts.emplace_back("passed", passed);
    return finish(total, job, out, err);
}

} // namespace

ExitCode run(const JobSpec& job, std::ostream& out, std::ostream& err) {
    try {
        switch (job.command) {
        case Command::validate:
            return validate_job(job, out);
        case Command::factor:
            return factor_job(job, out, err);
        case Command::lift:
            return lift_job(job, out, err);
        case Command::verify:
            return verify_job(job, out, err);
        case Command::oracle:
            return oracle_job(job, out, err);
        }
    } catch (const SizeBudgetExceeded& e) {
        err << "size budget exceeded: " << e.what() << "\n";
        return ExitCode::budget_exceeded;
    } catch (const NotStabilised& e) {
        err << e.what() << "\n";
        return ExitCode::not_stabilised;
    } catch (const InvalidPresentation& e) {
        err << "invalid presentation:\n" << e.what();
        return ExitCode::failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::failure;
    }
    return ExitCode::failure;
}

} // namespace soa
