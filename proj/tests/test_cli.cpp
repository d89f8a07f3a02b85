#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hylo/commands.hpp"
#include "hylo/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "hylo_test_cli";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = workdir() / (name + ".json");
    std::ofstream(p) << body;
    return p;
}

// Runs the installed binary and returns its exit status.
int run_cli(const std::string& args, std::string* log = nullptr) {
    const fs::path out = workdir() / "stderr.txt";
    const std::string cmd = std::string(HYLO_CLI_PATH) + " " + args + " 2> " + out.string();
    const int status = std::system(cmd.c_str());
    if (log) {
        std::ifstream in(out);
        std::ostringstream s;
        s << in.rdbuf();
        *log = s.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string strip_timestamp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# generated:", 0) != 0) out << line << "\n";
    }
    return out.str();
}

std::string evolve_config(const std::string& out, const std::string& extra) {
    return R"J({
  "command": "evolve",
  "grid": {"L": 40, "N": 128},
  "family": "fkdv",
  "s": 0.5,
  "nonlinearity": "bo",
  "output_dir": ")J" + (workdir() / out).string() + R"J(",
  "evolve": {"dt": 0.01, "t_end": 0.2, "snapshot_stride": 10, "snapshots": true)J" + extra + R"J(}
})J";
}

}  // namespace

TEST_CASE("zero data evolves and exits 0") {
    const auto cfg = write_config("zero", evolve_config("zero", R"J(, "initial": {"type": "zero"})J"));
    CHECK(run_cli(cfg.string()) == 0);
    const auto tr = hylo::io::read_trace(workdir() / "zero" / "trace.dat");
    CHECK(tr.size() == 3);
    for (double e : tr.energy) CHECK(e == 0.0);
    CHECK(fs::exists(workdir() / "zero" / "snapshot_00000.dat"));
}

TEST_CASE("non-positive dt is a configuration error") {
    const auto cfg = write_config("baddt", R"J({"command": "evolve", "grid": {"L": 40, "N": 128},
        "nonlinearity": "bo", "output_dir": ")J" + (workdir() / "baddt").string() + R"J(",
        "evolve": {"dt": 0, "t_end": 1}})J");
    CHECK(run_cli(cfg.string()) == 2);
}

TEST_CASE("missing nonlinearity is a configuration error") {
    const auto cfg = write_config("now", R"J({"command": "evolve", "grid": {"L": 40, "N": 128}})J");
    std::string log;
    CHECK(run_cli(cfg.string(), &log) == 2);
    CHECK(log.find("nonlinearity") != std::string::npos);
}

TEST_CASE("other configuration errors") {
    CHECK(run_cli((workdir() / "missing.json").string()) == 2);
    CHECK(run_cli("") == 2);
    const auto a = write_config("grid", R"J({"command": "evolve", "grid": {"L": 40, "N": 7}, "nonlinearity": "bo"})J");
    CHECK(run_cli(a.string()) == 2);
    const auto b = write_config("key", R"J({"command": "evolve", "nonlinearity": "cubic"})J");
    CHECK(run_cli(b.string()) == 2);
    const auto c = write_config("cmd", R"J({"command": "fly", "nonlinearity": "bo"})J");
    CHECK(run_cli(c.string()) == 2);
    const auto d = write_config("s", R"J({"command": "evolve", "nonlinearity": "bo", "s": 0.25})J");
    CHECK(run_cli(d.string()) == 2);
    CHECK(run_cli(a.string() + " " + b.string()) == 2);
}

TEST_CASE("supercritical power warns but succeeds") {
    const auto cfg = write_config("p6", R"J({"command": "soliton", "grid": {"L": 100, "N": 512}, "s": 0.5,
        "nonlinearity": "power(6, -1)", "output_dir": ")J" + (workdir() / "p6").string() + R"J(",
        "soliton": {"method": "petviashvili", "lambda": 1}})J");
    std::string log;
    CHECK(run_cli(cfg.string(), &log) == 0);
    CHECK(log.find("warning") != std::string::npos);
    CHECK(fs::exists(workdir() / "p6" / "solution.dat"));
}

TEST_CASE("vanishing minimization exits 1") {
    const auto cfg = write_config("vanish", R"J({"command": "soliton", "grid": {"L": 100, "N": 256}, "s": 0.5,
        "nonlinearity": "zero", "output_dir": ")J" + (workdir() / "vanish").string() + R"J(",
        "soliton": {"method": "gradient_flow", "charge": 1, "max_iter": 500}})J");
    CHECK(run_cli(cfg.string()) == 1);
}

TEST_CASE("blow-up exits 1 and keeps the last finite state") {
    const auto cfg = write_config("blow", R"J({"command": "evolve", "grid": {"L": 20, "N": 128}, "s": 0.5,
        "nonlinearity": "poly(0, 0, 0, 0, 1)", "output_dir": ")J" + (workdir() / "blow").string() + R"J(",
        "evolve": {"dt": 0.5, "t_end": 50, "dealias": false,
                   "initial": {"type": "gaussian", "amplitude": 20, "width": 2}}})J");
    CHECK(run_cli(cfg.string()) == 1);
    CHECK(fs::exists(workdir() / "blow" / "last_finite.dat"));
}

TEST_CASE("outputs are reproducible") {
    const std::string extra = R"J(, "initial": {"type": "random", "kmax": 8, "amplitude": 1})J";
    const auto a = write_config("rep_a", evolve_config("rep_a", extra));
    const auto b = write_config("rep_b", evolve_config("rep_b", extra));
    CHECK(run_cli(a.string()) == 0);
    CHECK(run_cli(b.string()) == 0);
    for (const char* f : {"trace.dat", "snapshot_00001.dat"}) {
        CHECK(strip_timestamp(workdir() / "rep_a" / f) == strip_timestamp(workdir() / "rep_b" / f));
    }
}

TEST_CASE("sweep runs several configurations") {
    const auto a = write_config("sw_a", evolve_config("sw_a", R"J(, "initial": {"type": "bo_soliton"})J"));
    const auto b = write_config("sw_b", R"J({"command": "diagnostics", "output_dir": ")J" +
                                            (workdir() / "sw_b").string() +
                                            R"J(", "diagnostics": {"gn": {"p": [3, 4, 6], "s": [0.5, 1]}}})J");
    CHECK(run_cli("--sweep " + a.string() + " " + b.string()) == 0);
    CHECK(fs::exists(workdir() / "sw_a" / "trace.dat"));
    const auto t = hylo::io::read_table(workdir() / "sw_b" / "gn_table.dat");
    CHECK(t.rows.size() == 6);
}

TEST_CASE("in-process runner maps errors to exit codes") {
    std::ostringstream log;
    CHECK(hylo::run_config_file(workdir() / "nope.json", log) == hylo::exit_config_error);
    const auto cfg = write_config("inproc", evolve_config("inproc", ""));
    CHECK(hylo::run_config_file(cfg, log) == hylo::exit_ok);
}

TEST_CASE("shipped soliton translation demo conserves charge") {
    std::ifstream in(fs::path(HYLO_CONFIG_DIR) / "bo_translation.json");
    auto doc = nlohmann::json::parse(in, nullptr, true, true);
    doc["output_dir"] = (workdir() / "demo").string();
    doc["evolve"]["snapshots"] = false;
    std::ofstream(workdir() / "demo.json") << doc.dump(2);
    REQUIRE(run_cli((workdir() / "demo.json").string()) == 0);
    const auto tr = hylo::io::read_trace(workdir() / "demo" / "trace.dat");
    CHECK(tr.times.back() == doctest::Approx(10.0));
    CHECK(tr.max_charge_drift() <= 1e-8);  // relative to the initial charge
}
