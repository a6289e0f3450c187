#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string cli = DFH_CLI_PATH;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args) {
    int rc = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

const char* exp_job = R"({"system": {"m": 1, "equations":
  [[[{"idx":[0],"val":"-1"}],[{"idx":[0],"val":"1"}]]]}, "seeds": {"0": "1"}})";

const char* geom_job = R"({"system": {"m": 1, "equations":
  [[[{"idx":[0],"val":"-1"}],[{"idx":[0],"val":"1"},{"idx":[1],"val":"-1"}]]]},
  "seeds": {"0": "1"}})";

}  // namespace

TEST_CASE("cli: completed analyses exit 0") {
    write_file("cli_exp.json", exp_job);
    write_file("cli_geom.json", geom_job);
    CHECK(run("generate --input cli_exp.json --T 6 --output cli_terms.json") == 0);
    auto terms = read_file("cli_terms.json");
    CHECK(terms.find("1/120") != std::string::npos);

    CHECK(run("height-profile --input cli_exp.json --T 200 --output cli_prof.json") == 0);
    auto prof = read_file("cli_prof.json");
    CHECK(prof.find("\"verdict\": \"property-P-violated\"") != std::string::npos);
    CHECK(prof.find("\"increment_bound_ok\": true") != std::string::npos);

    // a negative analytical verdict is still exit 0
    CHECK(run("certify-rational --input cli_exp.json --T 40 --output cli_cert_exp.json") == 0);
    CHECK(read_file("cli_cert_exp.json").find("hypothesis-violated") != std::string::npos);

    CHECK(run("certify-rational --input cli_geom.json --T 20 --output cli_cert.json") == 0);
    auto cert = read_file("cli_cert.json");
    CHECK(cert.find("\"verdict\": \"certified-rational\"") != std::string::npos);
    CHECK(cert.find("\"delta\"") != std::string::npos);
    CHECK(cert.find("\"eta\"") != std::string::npos);
    CHECK(cert.find("\"degree_budget\"") != std::string::npos);
    CHECK(cert.find("\"witnesses\"") != std::string::npos);
}

TEST_CASE("cli: byte-identical reports on identical inputs") {
    write_file("cli_geom.json", geom_job);
    CHECK(run("certify-rational --input cli_geom.json --T 20 --output cli_a.json") == 0);
    CHECK(run("certify-rational --input cli_geom.json --T 20 --output cli_b.json") == 0);
    auto a = read_file("cli_a.json"), b = read_file("cli_b.json");
    CHECK(a == b);
    CHECK_FALSE(a.empty());
}

TEST_CASE("cli: malformed input exits 2 naming the field") {
    write_file("cli_bad.json", "this is not json");
    CHECK(run("generate --input cli_bad.json --T 5") == 2);

    write_file("cli_badfield.json", R"({"system": {"m": 1, "equations":
      [[[{"idx":[0],"val":"not-a-number"}]]]}})");
    CHECK(run("generate --input cli_badfield.json --T 5") == 2);

    CHECK(run("generate --input cli_nonexistent.json --T 5") == 2);
    CHECK(run("frobnicate --input cli_geom.json") == 2);
}

TEST_CASE("cli: unsatisfied precondition exits 3") {
    // missing seed for the exp recurrence
    write_file("cli_noseed.json", R"({"system": {"m": 1, "equations":
      [[[{"idx":[0],"val":"-1"}],[{"idx":[0],"val":"1"}]]]}})");
    CHECK(run("generate --input cli_noseed.json --T 5") == 3);
}

TEST_CASE("cli: classify-lrs and denominator-check") {
    // Fibonacci: not all roots of unity, no cyclotomic closed form
    write_file("cli_fib.json", R"({"char_poly": ["-1","-1","1"], "initial": ["1","1"],
      "offset": 0})");
    CHECK(run("classify-lrs --input cli_fib.json --T 12 --output cli_fib_rep.json") == 0);
    auto fib = read_file("cli_fib_rep.json");
    CHECK(fib.find("\"all\": false") != std::string::npos);
    CHECK(fib.find("\"closed_form\": null") != std::string::npos);

    // period 3 with a section: modulus 3 gives a constant sequence
    write_file("cli_p3.json", R"({"char_poly": ["-1","0","0","1"], "initial": ["1","2","3"],
      "offset": 0})");
    CHECK(run("classify-lrs --input cli_p3.json --T 9 --output cli_p3_rep.json") == 0);
    CHECK(read_file("cli_p3_rep.json").find("\"period\": 3") != std::string::npos);
    CHECK(run("classify-lrs --input cli_p3.json --T 8 --modulus 3 --residue 1 "
              "--output cli_p3s.json") == 0);
    CHECK(read_file("cli_p3s.json").find("\"period\": 1") != std::string::npos);

    // (1 - x1)(1 + x2) is cyclotomic form
    write_file("cli_den.json", R"({"m": 2, "poly": [
      {"idx":[0,0],"val":"1"}, {"idx":[1,0],"val":"-1"},
      {"idx":[0,1],"val":"1"}, {"idx":[1,1],"val":"-1"}]})");
    CHECK(run("denominator-check --input cli_den.json --output cli_den_rep.json") == 0);
    auto den = read_file("cli_den_rep.json");
    CHECK(den.find("\"is_cyclotomic_form\": true") != std::string::npos);
    CHECK(den.find("\"multiplicity_ok\": true") != std::string::npos);
}

TEST_CASE("cli: substitute") {
    write_file("cli_sub.json", R"({"m": 2,
      "num": [{"idx":[0,0],"val":"1"}],
      "den": [{"idx":[0,0],"val":"1"}, {"idx":[1,1],"val":"-1"}]})");
    CHECK(run("substitute --input cli_sub.json --u 1,2 --output cli_sub_rep.json") == 0);
    auto rep = read_file("cli_sub_rep.json");
    // 1 - x1 x2 at (t, t^2) -> 1 - t^3
    CHECK(rep.find("\"den_nonzero\": true") != std::string::npos);
    CHECK(run("substitute --input cli_sub.json --u 1,2,3") == 2);
}

TEST_CASE("cli: theorem2-check") {
    write_file("cli_t2.json", R"({"system": {"m": 1, "equations":
      [[[{"idx":[0],"val":"-1"}],[{"idx":[0],"val":"1"},{"idx":[1],"val":"-1"}]]]},
      "witness": {"d": 0, "k": 1, "alphas": ["1"], "c": [
        {"n":0,"s":1,"t":0,"val":"1"},{"n":1,"s":1,"t":0,"val":"1"},
        {"n":2,"s":1,"t":0,"val":"1"},{"n":3,"s":1,"t":0,"val":"1"},
        {"n":4,"s":1,"t":0,"val":"1"},{"n":5,"s":1,"t":0,"val":"1"},
        {"n":6,"s":1,"t":0,"val":"1"},{"n":7,"s":1,"t":0,"val":"1"},
        {"n":8,"s":1,"t":0,"val":"1"},{"n":9,"s":1,"t":0,"val":"1"}]}})");
    CHECK(run("theorem2-check --input cli_t2.json --T 10 --output cli_t2_rep.json") == 0);
    auto rep = read_file("cli_t2_rep.json");
    CHECK(rep.find("\"beta_identity_ok\": true") != std::string::npos);

    // corrupt one witness coefficient: beta identity fails -> exit 3
    write_file("cli_t2bad.json", R"({"system": {"m": 1, "equations":
      [[[{"idx":[0],"val":"-1"}],[{"idx":[0],"val":"1"},{"idx":[1],"val":"-1"}]]]},
      "witness": {"d": 0, "k": 1, "alphas": ["1"], "c": [
        {"n":0,"s":1,"t":0,"val":"1"},{"n":1,"s":1,"t":0,"val":"1"},
        {"n":2,"s":1,"t":0,"val":"1"},{"n":3,"s":1,"t":0,"val":"5"},
        {"n":4,"s":1,"t":0,"val":"1"},{"n":5,"s":1,"t":0,"val":"1"},
        {"n":6,"s":1,"t":0,"val":"1"},{"n":7,"s":1,"t":0,"val":"1"},
        {"n":8,"s":1,"t":0,"val":"1"},{"n":9,"s":1,"t":0,"val":"1"}]}})");
    CHECK(run("theorem2-check --input cli_t2bad.json --T 10") == 3);
}
