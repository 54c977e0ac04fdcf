#include <iostream>

#include <CLI11.hpp>

#include "soa/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"soa: the small object argument over finite sets"};
    app.require_subcommand(1);

    soa::JobSpec job;
    std::string mode;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--presentation,-p", job.presentation, "presentation JSON")->required();
        sub->add_option("--budget", job.budget.max_input_carrier, "largest accepted input carrier")
            ->capture_default_str();
        sub->add_option("--enumeration-budget", job.budget.max_enumeration, "largest single enumeration")
            ->capture_default_str();
        sub->add_option("--out,-o", job.out, "write the JSON result here instead of stdout");
    };

    auto* validate = app.add_subcommand("validate", "check every axiom of a presentation");
    validate->add_option("--presentation,-p", job.presentation, "presentation JSON")->required();

    auto* factor = app.add_subcommand("factor", "factor an arrow and write its certificate");
    common(factor);
    factor->add_option("--map,-m", job.map, "arrow JSON")->required();
    factor->add_option("--mode", mode, "plain or special")->check(CLI::IsMember({"plain", "special"}));
    factor->add_option("--max-stage", job.max_stage, "last chain stage to try")->capture_default_str();
    factor->add_option("--trace", job.trace, "write per-stage sizes and iso flags here");

    auto* lift = app.add_subcommand("lift", "solve a lifting problem against R");
    common(lift);
    lift->add_option("--certificate,-c", job.certificate, "certificate JSON")->required();
    lift->add_option("--problem", job.problem, "problem JSON")->required();

    auto* verify = app.add_subcommand("verify", "re-verify a certificate");
    common(verify);
    verify->add_option("--certificate,-c", job.certificate, "certificate JSON")->required();

    auto* oracle = app.add_subcommand("oracle", "run an enumeration oracle");
    common(oracle);
    oracle->add_option("--kind", job.oracle_kind, "kappa or initiality")
        ->check(CLI::IsMember({"kappa", "initiality"}))
        ->capture_default_str();
    oracle->add_option("--map,-m", job.map, "source arrow (kappa)");
    oracle->add_option("--target,-t", job.target, "target arrow (kappa) or algebra list (initiality)");
    oracle->add_option("--certificate,-c", job.certificate, "certificate JSON (initiality)");
    oracle->add_option("--max-carrier", job.max_carrier, "carrier bound (kappa)")->capture_default_str();
    oracle->add_option("--samples", job.samples, "random pairs instead of all pairs (kappa)");
    oracle->add_option("--seed", job.seed, "seed for --samples")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help exits 0; every usage error maps to 1
        return app.exit(e) == 0 ? 0 : static_cast<int>(soa::ExitCode::failure);
    }

    if (*validate) {
        job.command = soa::Command::validate;
    } else if (*factor) {
        job.command = soa::Command::factor;
    } else if (*lift) {
        job.command = soa::Command::lift;
    } else if (*verify) {
        job.command = soa::Command::verify;
    } else {
        job.command = soa::Command::oracle;
    }
    if (!mode.empty()) {
        job.mode = soa::parse_mode(mode);
    }
    return static_cast<int>(soa::run(job, std::cout, std::cerr));
}
