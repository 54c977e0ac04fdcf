#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "soa/cli.hpp"
#include "soa/json_io.hpp"
#include "soa/verify.hpp"

#ifndef SOA_CLI_PATH
#define SOA_CLI_PATH "soa"
#endif

using namespace soa;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;

    Scratch() {
        dir = fs::temp_directory_path() / ("soa-test-" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

struct Ran {
    ExitCode code;
    std::string out;
    std::string err;
};

Ran run_job(const JobSpec& job) {
    std::ostringstream out;
    std::ostringstream err;
    ExitCode code = run(job, out, err);
    return {code, out.str(), err.str()};
}

JobSpec factor_job(const std::string& pres, const std::string& map) {
    JobSpec job;
    job.command = Command::factor;
    job.presentation = oracle::fixture(pres);
    job.map = oracle::fixture(map);
    return job;
}

void write(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

int shell(const std::string& args) {
    const std::string cmd = std::string(SOA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("validate") {
    JobSpec job;
    job.command = Command::validate;
    job.presentation = oracle::fixture("gen_abc.json");
    Ran r = run_job(job);
    CHECK(r.code == ExitCode::ok);
    CHECK(r.out.find("valid double presentation") != std::string::npos);

    Scratch tmp;
    Json bad = load_json(oracle::fixture("gen_abc.json"));
    bad.erase("vcomp");
    save_json(tmp("bad.json"), bad);
    job.presentation = tmp("bad.json");
    r = run_job(job);
    CHECK(r.code == ExitCode::failure);
    CHECK(r.err.find("vertical-composition") != std::string::npos);
}

TEST_CASE("factor writes a certificate that reads back unchanged") {
    Scratch tmp;
    JobSpec job = factor_job("gen_split_epi.json", "map_split_epi.json");
    job.out = tmp("cert.json");
    job.trace = tmp("trace.json");
    Ran r = run_job(job);
    REQUIRE(r.code == ExitCode::ok);
    Json j = load_json(job.out);
    CHECK(j["format"] == "soa-certificate/1");
    CHECK(j["stage"] == 1);
    Presentation p = load_presentation(job.presentation);
    Certificate cert = certificate_from_json(j, p);
    CHECK(cert.result.middle().size == 5);
    CHECK(to_json(cert, p) == j);
    Json trace = load_json(job.trace);
    CHECK(trace.contains("stages"));
    CHECK(trace.contains("iso"));
}

TEST_CASE("factor exit codes") {
    Scratch tmp;
    JobSpec growth = factor_job("gen_growth.json", "map_growth.json");
    growth.max_stage = 5;
    Ran r = run_job(growth);
    CHECK(r.code == ExitCode::not_stabilised);
    CHECK(r.err.find("1 2 3 4 5 6") != std::string::npos);

    write(tmp("big.json"), R"({"dom": 7, "cod": 1, "table": [0, 0, 0, 0, 0, 0, 0]})");
    JobSpec big = factor_job("gen_split_epi.json", "map_split_epi.json");
    big.map = tmp("big.json");
    CHECK(run_job(big).code == ExitCode::budget_exceeded);
    big.budget.max_input_carrier = 7;
    CHECK(run_job(big).code == ExitCode::ok);

    write(tmp("broken.json"), R"({"dom": 2, "cod": 1, "table": [0, 1]})");
    JobSpec broken = factor_job("gen_split_epi.json", "map_split_epi.json");
    broken.map = tmp("broken.json");
    CHECK(run_job(broken).code == ExitCode::failure);
}

TEST_CASE("lift answers a problem from a file") {
    Scratch tmp;
    JobSpec job = factor_job("gen_split_epi.json", "map_split_epi.json");
    job.out = tmp("cert.json");
    REQUIRE(run_job(job).code == ExitCode::ok);

    JobSpec lift;
    lift.command = Command::lift;
    lift.presentation = job.presentation;
    lift.certificate = job.out;
    lift.problem = oracle::fixture("problem_split_epi.json");
    Ran r = run_job(lift);
    REQUIRE(r.code == ExitCode::ok);
    Json j = parse_json(r.out);
    CHECK(j["gen"] == "j");
    FiniteMap filler = map_from_json(j["filler"]);
    CHECK(filler.dom().size == 1);
    CHECK(filler.cod().size == 5);
    Certificate cert = certificate_from_json(load_json(job.out), load_presentation(job.presentation));
    CHECK(cert.result.R.map()(filler(0)) == 1);

    Json problem = load_json(lift.problem);
    problem["sigma1"]["table"][0] = 7;
    save_json(tmp("bad_problem.json"), problem);
    lift.problem = tmp("bad_problem.json");
    CHECK(run_job(lift).code == ExitCode::failure);
}

TEST_CASE("verify flags corrupted certificates") {
    Scratch tmp;
    JobSpec job = factor_job("gen_split_epi.json", "map_split_epi.json");
    job.out = tmp("cert.json");
    REQUIRE(run_job(job).code == ExitCode::ok);

    JobSpec verify;
    verify.command = Command::verify;
    verify.presentation = job.presentation;
    verify.certificate = job.out;
    CHECK(run_job(verify).code == ExitCode::ok);

    Json cert = load_json(job.out);
    // swap two points of Ef in L so that R ∘ L no longer equals f
    auto& L = cert["L"]["table"];
    std::swap(L[0], L[1]);
    save_json(tmp("corrupt.json"), cert);
    verify.certificate = tmp("corrupt.json");
    Ran r = run_job(verify);
    CHECK(r.code == ExitCode::failure);
    CHECK((r.out + r.err).find("factorisation") != std::string::npos);

    write(tmp("garbage.json"), "{\"format\": ");
    verify.certificate = tmp("garbage.json");
    r = run_job(verify);
    CHECK(r.code == ExitCode::failure);
    CHECK((r.out + r.err).find("well-formed") != std::string::npos);
}

TEST_CASE("oracle jobs") {
    Scratch tmp;
    write(tmp("id.json"), R"({"dom": 1, "cod": 1, "table": [0]})");
    JobSpec kappa;
    kappa.command = Command::oracle;
    kappa.presentation = oracle::fixture("gen_split_epi.json");
    kappa.map = tmp("id.json");
    kappa.target = tmp("id.json");
    CHECK(run_job(kappa).code == ExitCode::ok);

    kappa.map.clear();
    kappa.target.clear();
    kappa.samples = 5;
    kappa.seed = 9;
    Ran a = run_job(kappa);
    Ran b = run_job(kappa);
    CHECK(a.code == ExitCode::ok);
    CHECK(a.out == b.out);

    JobSpec job = factor_job("gen_split_epi.json", "map_split_epi.json");
    job.out = tmp("cert.json");
    REQUIRE(run_job(job).code == ExitCode::ok);
    JobSpec init;
    init.command = Command::oracle;
    init.oracle_kind = "initiality";
    init.presentation = job.presentation;
    init.certificate = job.out;
    CHECK(run_job(init).code == ExitCode::ok);
}

TEST_CASE("the installed binary returns the documented exit codes") {
    const std::string p = oracle::fixture("gen_split_epi.json");
    CHECK(shell("validate -p " + p) == 0);
    CHECK(shell("factor -p " + p + " -m " + oracle::fixture("map_split_epi.json")) == 0);
    CHECK(shell("factor -p " + oracle::fixture("gen_growth.json") + " -m " + oracle::fixture("map_growth.json") +
                " --max-stage 5") == 2);
    CHECK(shell("factor -p " + p + " -m " + oracle::fixture("map_split_epi.json") + " --budget 2") == 3);
    CHECK(shell("factor -p " + p) == 1);
    CHECK(shell("factor -p " + p + " -m " + oracle::fixture("map_split_epi.json") + " --mode fancy") == 1);
    CHECK(shell("--help") == 0);
}
