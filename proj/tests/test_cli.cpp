#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diminv/json_io.hpp"

using namespace diminv;
namespace fs = std::filesystem;

namespace {

// The binary under test is supplied by the build through DIMINV_CLI.
std::string cli_path() {
    const char* p = std::getenv("DIMINV_CLI");
    return p == nullptr ? "" : p;
}

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = fs::temp_directory_path() / ("diminv_cli_out_" +
                                                std::to_string(counter++) + ".txt");
    std::string cmd = cli_path() + " " + args + " > " + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    fs::remove(out);
    return {WEXITSTATUS(rc), ss.str()};
}

fs::path write_temp(const std::string& name, const std::string& contents) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << contents;
    return p;
}

const char* kT1 = R"({"tag":"T1","symbols":[
    {"kind":"symbol","name":"alpha","approx":2.5,"radius":1e-9},
    {"kind":"symbol","name":"beta","approx":0.3,"radius":1e-9}]})";

} // namespace

TEST_CASE("cli: bezout prints the identity") {
    REQUIRE_FALSE(cli_path().empty());
    auto in = write_temp("bez_in.json", R"({"psi1":["-2","1"],"psi2":["-3","1"]})");
    auto r = run_cli("bezout --input " + in.string());
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("= 1") != std::string::npos);

    auto bad = write_temp("bez_bad.json", R"({"psi1":["-1","1"],"psi2":["1","0","-1"]})");
    CHECK(run_cli("bezout --input " + bad.string()).exit_code == 3); // not coprime
}

TEST_CASE("cli: member exit codes") {
    std::string pres(kT1);
    auto good = write_temp("mem_good.json",
                           R"({"presentation":)" + pres +
                               R"(,"element":[{"radical":0,"degree":0,"coeff":"3/2"}]})");
    CHECK(run_cli("member --input " + good.string()).exit_code == 0);

    auto bad = write_temp("mem_bad.json",
                          R"({"presentation":)" + pres +
                              R"(,"element":[{"radical":0,"degree":1,"coeff":"1/2"}]})");
    auto r = run_cli("member --input " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.stdout_text.find("not in Z") != std::string::npos);

    auto unknown = write_temp("mem_unknown.json",
                              R"({"presentation":)" + pres +
                                  R"(,"element":[{"radical":1,"degree":1,"coeff":"1"}]})");
    CHECK(run_cli("member --input " + unknown.string()).exit_code == 3);

    auto malformed = write_temp("mem_malformed.json", "{nope");
    CHECK(run_cli("member --input " + malformed.string()).exit_code == 1);
}

TEST_CASE("cli: invariant decision with witness output") {
    std::string pres(kT1);
    auto inv = write_temp(
        "inv_good.json",
        R"({"presentation":)" + pres + R"(,"matrix":{"shape":"diagonal","entries":[
            {"coeff":"1","monomial":{"alpha":2}},{"coeff":"1","monomial":{"beta":2}}]}})");
    CHECK(run_cli("invariant --input " + inv.string()).exit_code == 0);

    auto bad = write_temp(
        "inv_bad.json",
        R"({"presentation":)" + pres + R"(,"matrix":{"shape":"diagonal","entries":[
            {"coeff":"2","monomial":{"alpha":2}},{"coeff":"1","monomial":{"beta":2}}]}})");
    auto out = fs::temp_directory_path() / "inv_res.json";
    auto r = run_cli("invariant --input " + bad.string() + " --output " + out.string());
    CHECK(r.exit_code == 2);
    Json doc = Json::parse(std::ifstream(out));
    CHECK(doc.at("invariant") == false);
    CHECK(doc.contains("witness"));
}

TEST_CASE("cli: certify then verify round trip, atomic outputs") {
    std::string prefix = (fs::temp_directory_path() / "cli_cert").string();
    auto r = run_cli(std::string("certify --a ") +
                     R"('{"kind":"algebraic","minpoly":[-2,0,1],"interval":["1","2"]}')" +
                     R"( --b '{"kind":"rational","num":"1","den":"2"}')" +
                     " --output-prefix " + prefix);
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(prefix + ".plus.json"));
    CHECK(fs::exists(prefix + ".minus.json"));
    CHECK_FALSE(fs::exists(prefix + ".plus.json.tmp"));
    CHECK(run_cli("verify " + prefix + ".plus.json").exit_code == 0);
    CHECK(run_cli("verify " + prefix + ".minus.json").exit_code == 0);

    // Determinism: a second run produces byte-identical certificates.
    std::string prefix2 = (fs::temp_directory_path() / "cli_cert2").string();
    run_cli(std::string("certify --a ") +
            R"('{"kind":"algebraic","minpoly":[-2,0,1],"interval":["1","2"]}')" +
            R"( --b '{"kind":"rational","num":"1","den":"2"}')" + " --output-prefix " +
            prefix2);
    std::ifstream f1(prefix + ".plus.json"), f2(prefix2 + ".plus.json");
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());

    // A corrupted certificate is rejected with exit 2.
    Json doc = Json::parse(std::ifstream(prefix + ".plus.json"));
    doc["target"]["exp"] = doc["target"]["exp"].get<long long>() + 1;
    auto bad = write_temp("cli_cert_bad.json", doc.dump());
    CHECK(run_cli("verify " + bad.string()).exit_code == 2);

    // Hypothesis violations exit 3.
    auto r3 = run_cli(std::string("certify --a ") +
                      R"('{"kind":"algebraic","minpoly":[-2,0,1],"interval":["1","2"]}')" +
                      R"( --b '{"kind":"rational","num":"1","den":"1"}')" +
                      " --output-prefix " + prefix);
    CHECK(r3.exit_code == 3);
}

TEST_CASE("cli: batch manifest") {
    std::string pres(kT1);
    auto good = write_temp("batch_mem.json",
                           R"({"presentation":)" + pres +
                               R"(,"element":[{"radical":0,"degree":0,"coeff":"1"}]})");
    auto empty = write_temp("batch_empty.json", "[]");
    auto r0 = run_cli("batch --input " + empty.string());
    CHECK(r0.exit_code == 0);

    Json manifest = Json::array();
    manifest.push_back(
        Json{{"command", "unit-power"},
             {"inputs", Json{{"r", "3"}, {"q", "2"}, {"min_n", 1}}}});
    manifest.push_back(Json{{"command", "bezout"},
                            {"inputs", Json{{"psi1", Json::array({"-2", "1"})},
                                            {"psi2", Json::array({"-3", "1"})}}}});
    manifest.push_back(Json{{"command", "nonsense"}, {"inputs", Json::object()}});
    auto mixed = write_temp("batch_mixed.json", manifest.dump());
    auto out = fs::temp_directory_path() / "batch_summary.json";
    auto r = run_cli("batch --input " + mixed.string() + " --output " + out.string());
    CHECK(r.exit_code == 2); // one job failed, others unaffected
    Json summary = Json::parse(std::ifstream(out));
    REQUIRE(summary.at("jobs").size() == 3);
    CHECK(summary["jobs"][0]["status"] == 0);
    CHECK(summary["jobs"][1]["status"] == 0);
    CHECK(summary["jobs"][2]["status"] == 1);
}

TEST_CASE("cli: fgroup emits a report at small bounds") {
    auto out = fs::temp_directory_path() / "fgroup_small.json";
    auto r = run_cli("fgroup --beta one --height 1 --expo 1 --nbound 1 --output " +
                     out.string());
    CHECK(r.exit_code == 0);
    Json doc = Json::parse(std::ifstream(out));
    CHECK(doc.at("verdict") == "consistent_with_claim");
    CHECK(doc.at("verified_inclusions").size() == 3);
    CHECK(run_cli("fgroup --beta nope --height 1 --expo 1 --nbound 1").exit_code == 3);
    // Tiny budget forces the family-too-large report.
    CHECK(run_cli("fgroup --beta one --height 10 --expo 6 --budget 1000").exit_code == 4);
}
