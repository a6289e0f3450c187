// dfh: exact analysis of D-finite power series on JSON job files.
//
// Exit codes: 0 completed analysis (including negative verdicts),
// 2 malformed input (diagnostic names the first offending field),
// 3 unsatisfied precondition (diagnostic carries the index).

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dfh/jobs.hpp"

using namespace dfh;

namespace {

json load_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("input", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw schema_error("input", std::string("invalid JSON: ") + e.what());
    }
    return j;
}

void emit(const json& report, const std::string& output) {
    std::string text = report.dump(2);
    text.push_back('\n');
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw schema_error("output", "cannot open " + output);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact heights, recurrences and rationality certificates for D-finite series"};
    std::string command, input, output;
    JobParams params;
    double tolerance = 0.01;
    app.add_option("command", command,
                   "one of: recur-from-ode generate height-profile certify-rational "
                   "classify-lrs denominator-check theorem2-check substitute")
        ->required();
    app.add_option("--input", input, "input JSON file")->required();
    app.add_option("--output", output, "report file (stdout when omitted)");
    app.add_option("--T", params.T, "truncation / term count");
    app.add_option("--num-deg", params.num_deg, "numerator degree bound override");
    app.add_option("--den-deg", params.den_deg, "denominator degree bound override");
    app.add_option("--modulus", params.modulus, "arithmetic progression modulus for classify-lrs");
    app.add_option("--residue", params.residue, "arithmetic progression residue for classify-lrs");
    app.add_option("--u", params.u, "comma-separated substitution exponents");
    app.add_option("--tolerance", tolerance, "reserved numeric tolerance for report trends");
    CLI11_PARSE(app, argc, argv);

    try {
        emit(run_command(command, load_input(input), params), output);
        return 0;
    } catch (const schema_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
