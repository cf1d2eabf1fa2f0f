// End-to-end checks of the farsee binary. The executable path arrives in the
// FARSEE_CLI environment variable (set by ctest).

#include "support/synthetic.hpp"

#include <json.hpp>

#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "farsee_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    const char* exe = std::getenv("FARSEE_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "FARSEE_CLI must point at the farsee binary");
    static int counter = 0;
    const fs::path out = scratch_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = scratch_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(exe) + " " + args + " > " + out.string() + " 2> " +
                            err.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_scratch(const std::string& name, const std::string& content) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
}

const std::string kHeader = "project_id,EP,ES,ED,EB,ET,EI\n";

} // namespace

TEST_CASE("validate: exit codes track the dataset's state") {
    const fs::path good = write_scratch("good.csv", synthetic::csv(8, 3));
    const CliResult ok = run_cli("validate " + good.string());
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("records: 8 total") != std::string::npos);

    const fs::path bad_col =
        write_scratch("badcol.csv", "project_id,EP,ES,ED,EB,ET,EZ\np,1,2,3,4,5,6\n");
    const CliResult schema = run_cli("validate " + bad_col.string());
    CHECK(schema.exit_code == 2);
    CHECK(schema.err.find("EZ") != std::string::npos);

    const fs::path holey =
        write_scratch("holey.csv", kHeader + "a,1,,3,4,5,6\nb,,2,3,4,5,6\n");
    CHECK(run_cli("validate " + holey.string()).exit_code == 3);

    CHECK(run_cli("validate /no/such/file.csv").exit_code == 2);
}

TEST_CASE("discretize: reproduces the [10,170]/4 scheme") {
    // ES spans exactly 22..162 so explicit pads 12/8 give the textbook universe
    std::string csv = kHeader;
    csv += "p1,4,22,80,120,60,30\n";
    csv += "p2,6,90,85,125,65,32\n";
    csv += "p3,8,162,95,130,70,34\n";
    const fs::path data = write_scratch("golden.csv", csv);
    const CliResult r = run_cli("discretize " + data.string() +
                                " --stage ES --intervals ES=4 --pad ES=explicit:12:8");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("universe [10.0000, 170.0000]") != std::string::npos);
    CHECK(r.out.find("L=40.0000") != std::string::npos);
    CHECK(r.out.find("W1 [10.0000, 50.0000)") != std::string::npos);
    CHECK(r.out.find("W2 [50.0000, 90.0000)") != std::string::npos);
    CHECK(r.out.find("W3 [90.0000, 130.0000)") != std::string::npos);
    CHECK(r.out.find("W4 [130.0000, 170.0000]") != std::string::npos);

    SUBCASE("a config file carries the same settings") {
        const fs::path cfg = write_scratch("golden.cfg",
                                           "intervals.ES = 4\n"
                                           "padding.ES.mode = explicit\n"
                                           "padding.ES.d1 = 12\n"
                                           "padding.ES.d2 = 8\n");
        const CliResult from_file =
            run_cli("discretize " + data.string() + " --stage ES --config " + cfg.string());
        CHECK(from_file.exit_code == 0);
        CHECK(from_file.out == r.out);
        CHECK(run_cli("discretize " + data.string() + " --config /no/file.cfg").exit_code ==
              2);
    }
    SUBCASE("n = 1 prints a single row") {
        const CliResult one = run_cli("discretize " + data.string() +
                                      " --stage ES --intervals ES=1");
        CHECK(one.exit_code == 0);
        CHECK(one.out.find("W1") != std::string::npos);
        CHECK(one.out.find("W2") == std::string::npos);
    }
    SUBCASE("invalid interval count exits 2") {
        CHECK(run_cli("discretize " + data.string() + " --intervals ES=0").exit_code == 2);
    }
}

TEST_CASE("mine: a deterministic mapping yields confidence-1 rules") {
    // EP intervals map one-to-one onto ES intervals; direct counting then
    // forces confidence 1 for every populated EP interval.
    std::string csv = kHeader;
    int id = 0;
    for (int block = 0; block < 4; ++block) {
        for (int rep = 0; rep < 3; ++rep) {
            const double ep = 10.0 + 20.0 * block + rep; // one cluster per interval
            const double es = 200.0 - 40.0 * block + rep;
            csv += "m" + std::to_string(id++) + "," + std::to_string(ep) + "," +
                   std::to_string(es) + ",50,60,70,80\n";
        }
    }
    const fs::path data = write_scratch("mapped.csv", csv);
    const CliResult r = run_cli("mine " + data.string() +
                                " --target ES --intervals EP=4 --intervals ES=4");
    CHECK(r.exit_code == 0);
    const std::string body = r.out;
    std::size_t confident = 0, pos = 0;
    while ((pos = body.find("confidence=1.000000", pos)) != std::string::npos) {
        ++confident;
        pos += 1;
    }
    CHECK(confident >= 4); // one rule per populated EP interval

    SUBCASE("an impossible confidence threshold is a usage error") {
        CHECK(run_cli("mine " + data.string() + " --target ES --min-confidence 1.5")
                  .exit_code == 2);
    }
    SUBCASE("an empty rule set still succeeds, with a warning") {
        // every EP value identical: the lone antecedent item predicts every
        // consequent with low confidence once ES is spread over many intervals
        std::string flat = kHeader;
        for (int i = 0; i < 8; ++i) {
            flat += "f" + std::to_string(i) + ",5," + std::to_string(10 + 17 * i) +
                    ",50,60,70,80\n";
        }
        const fs::path flat_path = write_scratch("flat.csv", flat);
        const CliResult empty = run_cli("mine " + flat_path.string() +
                                        " --target ES --intervals ES=8");
        CHECK(empty.exit_code == 0);
        CHECK(empty.out.find("rules for target ES: 0") != std::string::npos);
        CHECK(empty.err.find("warning") != std::string::npos);
    }
}

TEST_CASE("predict: the worked three-rule scenario lands on 49.08") {
    // Equal-width ES intervals with first midpoint 23.06434 and spacing 15:
    // the confidence-weighted average of the three injected rules is
    // 23.06434 + 15 * (0.932*(8/3) + 0.843*2 + 0.78/3) / 2.555 = 49.08.
    // ES spans 20..70, so explicit pads 4.43566/5.56434 pin that scheme.
    std::string csv = kHeader;
    csv += "q1,4,20,80,120,60,30\n";
    csv += "q2,5,45,85,125,65,32\n";
    csv += "q3,6,70,95,130,70,34\n";
    const fs::path data = write_scratch("predict.csv", csv);
    const fs::path rules = write_scratch("rules.txt",
                                         "EP1 => ES4 confidence=0.932\n"
                                         "EP1 => ES3 confidence=0.843\n"
                                         "EP1 => ES1 confidence=0.78\n");
    const CliResult r = run_cli("predict " + data.string() +
                                " --target ES --prior EP=4"
                                " --rules-file " + rules.string() +
                                " --intervals ES=4 --pad ES=explicit:4.43566:5.56434"
                                " --format json");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(std::fabs(doc["estimate"].get<double>() - 49.08) < 0.01);
    CHECK(doc["contributions"].size() == 3);
    CHECK(doc["fallback_used"] == false);

    SUBCASE("no matching rules under the error fallback exits 4") {
        const fs::path narrow = write_scratch("narrow.txt", "EP4 => ES4 confidence=0.9\n");
        const CliResult miss = run_cli("predict " + data.string() +
                                       " --target ES --prior EP=4 --rules-file " +
                                       narrow.string() + " --fallback error");
        CHECK(miss.exit_code == 4);
    }
    SUBCASE("out-of-universe priors warn and clamp") {
        const CliResult clamp = run_cli("predict " + data.string() +
                                        " --target ES --prior EP=4000 --rules-file " +
                                        rules.string());
        CHECK(clamp.exit_code == 0);
        CHECK(clamp.err.find("clamped") != std::string::npos);
    }
}

TEST_CASE("evaluate and compare work end to end") {
    const fs::path data = write_scratch("eval.csv", synthetic::csv(20, 11));
    const fs::path report = scratch_dir() / "report.json";
    const CliResult r = run_cli("evaluate " + data.string() + " --all --out " +
                                report.string());
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(report));

    SUBCASE("the report is byte-identical across runs") {
        const std::string first = slurp(report);
        const fs::path again = scratch_dir() / "report2.json";
        REQUIRE(run_cli("evaluate " + data.string() + " --all --out " + again.string())
                    .exit_code == 0);
        CHECK(first == slurp(again));
    }
    SUBCASE("compare prints one row per stage") {
        const CliResult cmp = run_cli("compare " + report.string());
        CHECK(cmp.exit_code == 0);
        for (const char* code : {"ES", "ED", "EB", "ET", "EI"}) {
            CHECK(cmp.out.find(code) != std::string::npos);
        }
        CHECK(cmp.out.find("target,method,median") != std::string::npos);
    }
    SUBCASE("compare writes the boxplot csv when asked") {
        const fs::path box = scratch_dir() / "box.csv";
        REQUIRE(run_cli("compare " + report.string() + " --boxplot-csv " + box.string())
                    .exit_code == 0);
        CHECK(slurp(box).rfind("target,method,median", 0) == 0);
    }
    SUBCASE("identical residual samples show up as a degenerate-safe row") {
        auto doc = nlohmann::json::parse(slurp(report));
        doc["stages"][0]["wilcoxon"] = {{"rank_sum", 210.0},
                                        {"z_value", 0.0},
                                        {"p_value", 1.0},
                                        {"p_exact", nullptr}};
        const fs::path tweaked = write_scratch("tweaked.json", doc.dump(2) + "\n");
        const CliResult cmp = run_cli("compare " + tweaked.string());
        CHECK(cmp.exit_code == 0);
        CHECK(cmp.out.find("degenerate-safe") != std::string::npos);
    }
    SUBCASE("a malformed report exits 2") {
        const fs::path junk = write_scratch("junk.json", "{\"stages\": 4}");
        CHECK(run_cli("compare " + junk.string()).exit_code == 2);
        const fs::path notjson = write_scratch("notjson.json", "hello");
        CHECK(run_cli("compare " + notjson.string()).exit_code == 2);
    }
    SUBCASE("tiny datasets exit 3") {
        const fs::path tiny = write_scratch("tiny.csv", kHeader + "a,1,2,3,4,5,6\n");
        CHECK(run_cli("evaluate " + tiny.string() + " --all").exit_code == 3);
    }
    SUBCASE("evaluate without a target is a usage error") {
        CHECK(run_cli("evaluate " + data.string()).exit_code == 2);
    }
}
