#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "rzeta/commands.hpp"

using namespace rzeta;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw std::runtime_error("cannot write fixture " + path);
    out << text;
}

void fixtures() {
    static const bool written = [] {
        write_file("fx_vanishing.json",
                   R"({ "p": 3, "terms": [ { "m": 1, "num": ["9", "-1"], "den": ["1"] } ] })");
        write_file("fx_geometric.json",
                   R"({ "p": 3, "terms": [ { "m": 1, "num": ["1"], "den": ["1", "-3"] } ] })");
        write_file("fx_gl2f2.json",
                   R"json({ "modulus": 2, "dim": 2, "label": "GL2(F2)",
                            "generators": [[[0,1],[1,0]], [[1,1],[0,1]]] })json");
        write_file("fx_sl2z9.json",
                   R"json({ "modulus": 9, "dim": 2, "label": "SL2(Z/9)",
                            "generators": [[[1,1],[0,1]], [[1,0],[1,1]]] })json");
        write_file("fx_coeffs.json", R"({ "p": 3, "coeffs": ["1", "3", "9", "27"] })");
        return true;
    }();
    (void)written;
}

bool has_check(const RunReport& r, const std::string& name, bool pass) {
    for (const auto& c : r.checks)
        if (c.name == name && c.pass == pass) return true;
    return false;
}

std::string detail_of(const RunReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c.detail;
    return {};
}

} // namespace

TEST_CASE("zeta eval prints the exact value") {
    fixtures();
    RunReport r = run_command({"zeta", "eval", "--formula", "fx_vanishing.json", "-e", "2"});
    CHECK(r.exit_code == 0);
    CHECK(detail_of(r, "evaluate") == "value at -2 = 0");

    r = run_command({"zeta", "eval", "--formula", "fx_geometric.json", "-e", "2"});
    CHECK(r.exit_code == 0);
    CHECK(detail_of(r, "evaluate") == "value at -2 = -1/26");
}

TEST_CASE("zeta vanish reflects the zero test in the exit code") {
    fixtures();
    CHECK(run_command({"zeta", "vanish", "--formula", "fx_vanishing.json"}).exit_code == 0);
    CHECK(run_command({"zeta", "vanish", "--formula", "fx_geometric.json"}).exit_code == 1);
}

TEST_CASE("zeta coeffs reports slices, flags, and support") {
    fixtures();
    RunReport r = run_command({"zeta", "coeffs", "--formula", "fx_geometric.json", "--bound", "27"});
    CHECK(r.exit_code == 0);
    CHECK(detail_of(r, "coefficients") == "r_1=1 r_3=3 r_9=9 r_27=27");
    CHECK(has_check(r, "support", true));

    r = run_command({"zeta", "coeffs", "--formula", "fx_vanishing.json", "--bound", "9"});
    CHECK(r.exit_code == 0);
    CHECK(detail_of(r, "flags").find("nonnegativity violated") != std::string::npos);
}

TEST_CASE("zeta padic traces valuations") {
    fixtures();
    RunReport r = run_command({"zeta", "padic", "--formula", "fx_geometric.json", "-e", "2",
                               "--precision", "10", "--stages", "5"});
    CHECK(r.exit_code == 0);
    CHECK(has_check(r, "valuations-nondecreasing", true));
    CHECK(has_check(r, "reaches-precision", true));
    CHECK(detail_of(r, "stage-1").find("diff valuation 3") != std::string::npos);
}

TEST_CASE("zeta fit labels fits as conjectural") {
    fixtures();
    RunReport r = run_command({"zeta", "fit", "--coeffs", "fx_coeffs.json",
                               "--deg-num", "0", "--deg-den", "1"});
    CHECK(r.exit_code == 0);
    std::string detail = detail_of(r, "pade-fit");
    CHECK(detail.find("conjectural") != std::string::npos);
    CHECK(detail.find("-3") != std::string::npos); // denominator 1 - 3X
}

TEST_CASE("group pipelines") {
    fixtures();
    RunReport r = run_command({"group", "enumerate", "--group", "fx_gl2f2.json"});
    CHECK(r.exit_code == 0);
    CHECK(detail_of(r, "enumerate") == "GL2(F2) has order 6");

    r = run_command({"group", "classes", "--group", "fx_gl2f2.json"});
    CHECK(r.exit_code == 0);
    CHECK(has_check(r, "class-equation", true));

    r = run_command({"group", "wedderburn", "--group", "fx_gl2f2.json"});
    CHECK(r.exit_code == 0);
    CHECK(detail_of(r, "wedderburn") == "6 = 6");

    r = run_command({"group", "chartab", "--group", "fx_gl2f2.json", "--table", "fx_table.json"});
    CHECK(r.exit_code == 0);
    std::ifstream table("fx_table.json");
    REQUIRE(table.good());
    std::string text((std::istreambuf_iterator<char>(table)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"degrees\"") != std::string::npos);
    CHECK(text.find("\"class_sizes\"") != std::string::npos);
}

TEST_CASE("verify pipelines on desk-scale groups") {
    fixtures();
    RunReport r = run_command({"verify", "mechanism", "--p", "3", "--kmax", "1"});
    CHECK(r.exit_code == 0);
    CHECK(has_check(r, "order-valuation-k1", true));

    r = run_command({"verify", "levels", "--group", "fx_sl2z9.json", "--kernel-mod", "3"});
    CHECK(r.exit_code == 0);
    CHECK(has_check(r, "factoring-degrees", true));
    CHECK(has_check(r, "conservation", true));

    r = run_command({"group", "wedderburn", "--group", "fx_sl2z9.json"});
    CHECK(r.exit_code == 0);
    CHECK(detail_of(r, "wedderburn") == "648 = 648");

    r = run_command({"verify", "clifford", "--group", "fx_sl2z9.json", "--kernel-mod", "3"});
    CHECK(r.exit_code == 0);
    CHECK(detail_of(r, "clifford-identity") == "27 characters of the kernel checked");
    int theta_rows = 0;
    for (const auto& c : r.checks)
        if (c.name.rfind("theta-", 0) == 0 && c.pass) ++theta_rows;
    CHECK(theta_rows == 27);
}

TEST_CASE("exit code contract") {
    fixtures();
    CHECK(run_command({"nonsense"}).exit_code == 2);
    CHECK(run_command({}).exit_code == 2);
    CHECK(run_command({"zeta", "eval"}).exit_code == 2); // missing --formula

    CHECK(run_command({"zeta", "eval", "--formula", "fx_missing.json"}).exit_code == 3);
    write_file("fx_broken.json", "{ not json");
    CHECK(run_command({"zeta", "eval", "--formula", "fx_broken.json"}).exit_code == 3);

    // pole at the evaluation point is an input problem
    write_file("fx_pole.json",
               R"({ "p": 3, "terms": [ { "m": 1, "num": ["1"], "den": ["-9", "1"] } ] })");
    CHECK(run_command({"zeta", "eval", "--formula", "fx_pole.json", "-e", "2"}).exit_code == 3);

    // exit code is zero exactly when every check passes
    for (const auto& args : {std::vector<std::string>{"zeta", "vanish", "--formula", "fx_geometric.json"},
                             std::vector<std::string>{"zeta", "vanish", "--formula", "fx_vanishing.json"}}) {
        RunReport r = run_command(args);
        CHECK((r.exit_code == 0) == r.all_pass());
    }
}

TEST_CASE("reports are deterministic and follow the schema") {
    fixtures();
    RunReport a = run_command({"group", "wedderburn", "--group", "fx_gl2f2.json"});
    RunReport b = run_command({"group", "wedderburn", "--group", "fx_gl2f2.json"});
    CHECK(a.to_json_text() == b.to_json_text());

    std::string json = a.to_json_text();
    CHECK(json.find("\"command\"") != std::string::npos);
    CHECK(json.find("\"checks\"") != std::string::npos);
    CHECK(json.find("\"exit_code\"") != std::string::npos);
    CHECK(json.find("\"name\"") != std::string::npos);
    CHECK(json.find("\"pass\"") != std::string::npos);
    CHECK(json.find("\"detail\"") != std::string::npos);

    RunReport c = run_command({"--json", "fx_report.json", "group", "wedderburn",
                               "--group", "fx_gl2f2.json"});
    CHECK(c.exit_code == 0);
    std::ifstream in("fx_report.json");
    REQUIRE(in.good());
    std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(written == c.to_json_text());

    CHECK(!a.inputs.empty());
    CHECK(a.inputs[0].second.size() == 16); // fixed-width digest
}

TEST_CASE("help is not an error") {
    fixtures();
    CHECK(run_command({"--help"}).exit_code == 0);
}
