#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "ggeval/bench.hpp"
#include "ggeval/dataset_io.hpp"
#include "ggeval/report_io.hpp"

using namespace ggeval;
namespace fs = std::filesystem;

namespace {

const std::string cli = GGEVAL_CLI_PATH;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ggeval_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) { return read_file(path); }

}  // namespace

TEST_CASE("cli: generate writes a loadable dataset deterministically") {
    TempDir dir;
    const std::string a = dir.file("a.jsonl");
    const std::string b = dir.file("b.jsonl");
    const std::string args =
        "generate --family er --n-graphs 5 --nodes 10:14 --p-edge 0.3 --seed 7 --log-level quiet";
    CHECK(run(args + " --out " + a) == 0);
    CHECK(run(args + " --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));

    const GraphSet set = load_dataset(a);
    CHECK(set.graphs.size() == 5);
    CHECK(set.meta.at("family") == "er");
    CHECK(set.meta.at("seed") == "7");

    // a loaded canonical file saves back to identical bytes
    save_dataset(set, b);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("cli: every family generates") {
    TempDir dir;
    CHECK(run("generate --family ba --n-graphs 3 --nodes 8:10 --m 2 --seed 1 --out " +
              dir.file("ba.jsonl") + " --log-level quiet") == 0);
    CHECK(run("generate --family ws --n-graphs 3 --nodes 8:10 --k 4 --p-rewire 0.2 --seed 1 "
              "--out " +
              dir.file("ws.jsonl") + " --log-level quiet") == 0);
    CHECK(run("generate --family community --n-graphs 3 --nodes 8:10 --communities 2 "
              "--p-intra 0.9 --p-inter 0.1 --seed 1 --out " +
              dir.file("cm.jsonl") + " --log-level quiet") == 0);
    CHECK(load_dataset(dir.file("ba.jsonl")).graphs.size() == 3);
    CHECK(load_dataset(dir.file("ws.jsonl")).graphs.size() == 3);
    CHECK(load_dataset(dir.file("cm.jsonl")).graphs.size() == 3);
}

TEST_CASE("cli: perturb writes one file per level") {
    TempDir dir;
    const std::string input = dir.file("in.jsonl");
    REQUIRE(run("generate --family er --n-graphs 4 --nodes 10 --p-edge 0.4 --seed 2 --out " +
                input + " --log-level quiet") == 0);
    CHECK(run("perturb --input " + input +
              " --kind add-edges --levels 0.0:0.2:0.1 --seed 3 --out-dir " + dir.file("out") +
              " --log-level quiet") == 0);
    CHECK(fs::exists(dir.file("out/level_0.jsonl")));
    CHECK(fs::exists(dir.file("out/level_0.1.jsonl")));
    CHECK(fs::exists(dir.file("out/level_0.2.jsonl")));

    const GraphSet level = load_dataset(dir.file("out/level_0.1.jsonl"));
    CHECK(level.meta.at("perturbation") == "add-edges");
    CHECK(level.meta.at("level") == "0.1");
    CHECK(level.graphs.size() == 4);
}

TEST_CASE("cli: select writes identical bytes across reruns and thread counts") {
    TempDir dir;
    const std::string input = dir.file("in.jsonl");
    REQUIRE(run("generate --family er --n-graphs 6 --nodes 10:13 --p-edge 0.3 --seed 4 --out " +
                input + " --log-level quiet") == 0);
    const std::string base =
        "select --input " + input +
        " --descriptors degree --kernels linear,rbf --scales 0.01,0.1,1 "
        "--perturbations add-edges,remove-edges --levels 0.0:0.6:0.2 --seed 5 "
        "--log-level quiet";
    CHECK(run(base + " --out " + dir.file("r1.json") + " --csv " + dir.file("c1.csv")) == 0);
    CHECK(run(base + " --out " + dir.file("r2.json") + " --csv " + dir.file("c2.csv") +
              " --threads 4") == 0);
    CHECK(slurp(dir.file("r1.json")) == slurp(dir.file("r2.json")));
    CHECK(slurp(dir.file("c1.csv")) == slurp(dir.file("c2.csv")));

    const CorrelationReport rep = parse_correlation_report(slurp(dir.file("r1.json")));
    CHECK(rep.rows.size() == 8);  // (1 linear + 3 rbf scales) x 2 kinds
    REQUIRE(rep.selection.has_value());
    CHECK(slurp(dir.file("c1.csv")).substr(0, 43) ==
          "descriptor,kernel,scale,estimator,n,m,mmd2\n");
}

TEST_CASE("cli: select honors the correlation measure flag") {
    TempDir dir;
    const std::string input = dir.file("in.jsonl");
    REQUIRE(run("generate --family er --n-graphs 5 --nodes 10 --p-edge 0.3 --seed 6 --out " +
                input + " --log-level quiet") == 0);
    for (const std::string measure : {"pearson", "spearman", "mi"}) {
        const std::string out = dir.file(measure + ".json");
        CHECK(run("select --input " + input +
                  " --descriptors degree --kernels rbf --scales 0.1,1 "
                  "--perturbations add-edges --levels 0.0:0.8:0.2 --seed 7 --correlation " +
                  measure + " --out " + out + " --log-level quiet") == 0);
        const CorrelationReport rep = parse_correlation_report(slurp(out));
        CHECK(measure_name(rep.measure) == measure);
    }
}

TEST_CASE("cli: rank ranks models and renders the same svg as report") {
    TempDir dir;
    const std::string test = dir.file("test.jsonl");
    const std::string train = dir.file("train.jsonl");
    const std::string model = dir.file("model.jsonl");
    REQUIRE(run("generate --family er --n-graphs 5 --nodes 10:12 --p-edge 0.3 --seed 8 --out " +
                test + " --log-level quiet") == 0);
    REQUIRE(run("generate --family er --n-graphs 6 --nodes 10:12 --p-edge 0.3 --seed 9 --out " +
                train + " --log-level quiet") == 0);
    REQUIRE(run("generate --family er --n-graphs 5 --nodes 10:12 --p-edge 0.6 --seed 10 "
                "--out " +
                model + " --log-level quiet") == 0);

    CHECK(run("rank --test " + test + " --train " + train + " --model er06=" + model +
              " --pseudo-models 0.1,0.5 --descriptors degree --kernels rbf "
              "--scales 0.1,1,10 --seed 11 --out " +
              dir.file("rank.json") + " --csv " + dir.file("rank.csv") + " --svg " +
              dir.file("rank.svg") + " --log-level quiet") == 0);

    const RankingReport rep = parse_ranking_report(slurp(dir.file("rank.json")));
    CHECK(rep.models ==
          std::vector<std::string>{"er06", "rewire-0.1", "rewire-0.5"});
    CHECK(rep.rows.size() == 3);
    CHECK(rep.test_size == 5);
    CHECK(rep.train_size == 6);

    CHECK(run("report --input " + dir.file("rank.json") +
              " --kind mmd-vs-scale --descriptor degree --kernel rbf --out " +
              dir.file("replot.svg") + " --log-level quiet") == 0);
    CHECK(slurp(dir.file("rank.svg")) == slurp(dir.file("replot.svg")));
}

TEST_CASE("cli: report renders heatmaps and bench plots") {
    TempDir dir;
    const std::string input = dir.file("in.jsonl");
    REQUIRE(run("generate --family er --n-graphs 5 --nodes 10 --p-edge 0.3 --seed 12 --out " +
                input + " --log-level quiet") == 0);
    REQUIRE(run("select --input " + input +
                " --descriptors degree,clustering --bins degree=auto,clustering=20 "
                "--kernels linear,rbf --scales 0.1,1 --perturbations add-edges "
                "--levels 0.0:0.6:0.3 --seed 13 --out " +
                dir.file("rep.json") + " --log-level quiet") == 0);
    CHECK(run("report --input " + dir.file("rep.json") +
              " --kind heatmap-best-worst --out " + dir.file("bw.svg") +
              " --log-level quiet") == 0);
    CHECK(slurp(dir.file("bw.svg")).find("class=\"cell\"") != std::string::npos);

    REQUIRE(run("bench --variable n-graphs --values 5,10 --fixed-nodes 15 --fixed-bins 15 "
                "--repetitions 2 --kernels linear,rbf --seed 14 --out " +
                dir.file("bench.csv") + " --log-level quiet") == 0);
    CHECK(run("report --input " + dir.file("bench.csv") + " --kind bench-lines --out " +
              dir.file("bench.svg") + " --log-level quiet") == 0);
    CHECK(slurp(dir.file("bench.svg")).find("class=\"bench\"") != std::string::npos);

    const std::string test = input;
    REQUIRE(run("rank --test " + test + " --train " + test +
                " --pseudo-models 0.2,0.6 --descriptors degree --bins 'degree=8|16' "
                "--kernels rbf --scales 0.1,1 --seed 15 --out " +
                dir.file("grid.json") + " --log-level quiet") == 0);
    CHECK(run("report --input " + dir.file("grid.json") +
              " --kind heatmap-argmin --descriptor degree --kernel rbf --out " +
              dir.file("argmin.svg") + " --log-level quiet") == 0);
    CHECK(slurp(dir.file("argmin.svg")).find("data-model=") != std::string::npos);
}

TEST_CASE("cli: exit codes distinguish usage from data errors") {
    TempDir dir;
    // unknown flag value
    CHECK(run("generate --family nosuch --n-graphs 1 --nodes 5 --seed 1 --out " +
              dir.file("x.jsonl")) == 1);
    // missing required option
    CHECK(run("generate --family er --out " + dir.file("x.jsonl")) == 1);
    // missing seed
    CHECK(run("generate --family er --n-graphs 1 --nodes 5 --out " + dir.file("x.jsonl")) ==
          1);
    // unknown subcommand
    CHECK(run("frobnicate") == 1);
    // no subcommand
    CHECK(run("") == 1);
    // bad grid grammar
    CHECK(run("perturb --input missing.jsonl --kind add-edges --levels 1:0:-1 --seed 1 "
              "--out-dir " +
              dir.file("d")) == 1);

    // data errors: invalid graph content
    {
        std::ofstream bad(dir.file("bad.jsonl"));
        bad << R"({"id":"g0","n":3,"edges":[[0,0]]})" << "\n";
    }
    CHECK(run("perturb --input " + dir.file("bad.jsonl") +
              " --kind add-edges --levels 0.0,0.5 --seed 1 --out-dir " + dir.file("d")) == 2);
    // missing input file
    CHECK(run("perturb --input " + dir.file("nothere.jsonl") +
              " --kind add-edges --levels 0.0,0.5 --seed 1 --out-dir " + dir.file("d")) == 2);
    // malformed report for the renderer
    {
        std::ofstream bad(dir.file("bad.json"));
        bad << "{}";
    }
    CHECK(run("report --input " + dir.file("bad.json") + " --kind mmd-vs-scale --out " +
              dir.file("x.svg")) == 2);

    // --help succeeds
    CHECK(run("--help") == 0);
    CHECK(run("generate --help") == 0);
}

TEST_CASE("cli: select rejects unusable strategy combinations") {
    TempDir dir;
    const std::string input = dir.file("in.jsonl");
    REQUIRE(run("generate --family er --n-graphs 4 --nodes 8 --p-edge 0.3 --seed 16 --out " +
                input + " --log-level quiet") == 0);
    CHECK(run("select --input " + input +
              " --descriptors degree --kernels rbf --scales 1 --perturbations add-edges "
              "--levels 0.0,0.5 --strategy best-single-perturbation --seed 17 --out " +
              dir.file("r.json")) == 1);
    CHECK(run("select --input " + input +
              " --descriptors degree --kernels rbf --scales 1 --perturbations add-edges "
              "--levels 0.0,0.5 --strategy best-single-perturbation --target add-edges "
              "--seed 17 --out " +
              dir.file("r.json") + " --log-level quiet") == 0);
}

TEST_CASE("cli: bench csv reruns are structurally stable") {
    TempDir dir;
    const std::string args =
        "bench --variable n-bins --values 5,10 --fixed-graphs 5 --fixed-nodes 10 "
        "--repetitions 2 --kernels linear --seed 18 --log-level quiet --out ";
    CHECK(run(args + dir.file("b1.csv")) == 0);
    CHECK(run(args + dir.file("b2.csv")) == 0);
    const auto r1 = parse_bench_csv(slurp(dir.file("b1.csv")));
    const auto r2 = parse_bench_csv(slurp(dir.file("b2.csv")));
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].kernel == r2[i].kernel);
        CHECK(r1[i].value == r2[i].value);
        CHECK(r1[i].mean_seconds > 0.0);  // timings differ run to run; structure must not
    }
}
