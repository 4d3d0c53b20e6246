#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace dyadic;
using namespace dyadic::cli;

namespace {

int emit(const Outcome& out) {
    std::cout << out.report.dump(2) << "\n";
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representation and classification of quadratic lattices over dyadic fields"};
    app.require_subcommand(1);

    Options o;
    std::string field;
    auto common = [&](CLI::App* c, bool pair) {
        c->add_option("--field", field, "field literal for inputs without a field line");
        c->add_option("--precision", o.precision, "oracle search depth in powers of pi (0: certifying depth)")->check(CLI::NonNegativeNumber);
        c->add_option("--seed", o.seed, "seed for the BONG search order and the oracle basis shuffle");
        c->add_option("--budget", o.budget, "oracle node budget")->check(CLI::PositiveNumber);
        c->add_flag("--timing", o.timing, "add wall-clock timing to the report");
        if (pair) {
            c->add_flag("--jordan", o.jordan, "also run the Jordan-splitting path and require agreement");
            c->add_flag("--oracle", o.oracle, "also run the brute-force oracle and require agreement");
            c->add_option("--expect", o.expect, "expected verdict; a different verdict exits with 1");
        }
    };

    std::string file1, file2, report_file;
    auto* inv = app.add_subcommand("invariants", "good BONG, R, alpha, W, Jordan data and boundary flags of a lattice");
    inv->add_option("file", file1, "lattice file")->required();
    common(inv, false);

    auto* dec = app.add_subcommand("decide", "decide N -> M");
    dec->add_option("N", file1, "lattice file for N")->required();
    dec->add_option("M", file2, "lattice file for M")->required();
    common(dec, true);

    auto* cls = app.add_subcommand("classify", "decide L = K");
    cls->add_option("L", file1, "lattice file for L")->required();
    cls->add_option("K", file2, "lattice file for K")->required();
    common(cls, true);

    auto* orc = app.add_subcommand("oracle", "brute-force embedding search for N -> M");
    orc->add_option("N", file1, "lattice file for N")->required();
    orc->add_option("M", file2, "lattice file for M")->required();
    common(orc, true);

    CampaignParams cp;
    auto* cam = app.add_subcommand("campaign", "random differential testing against the oracle");
    cam->add_option("--count", cp.count, "number of instances")->check(CLI::NonNegativeNumber);
    cam->add_option("--max-rank", cp.max_rank, "maximal rank")->check(CLI::Range(1, 4));
    cam->add_option("--vmin", cp.vmin, "least entry valuation");
    cam->add_option("--vmax", cp.vmax, "largest entry valuation");
    cam->add_option("--sublattice-fraction", cp.sublattice_fraction, "share of pairs built as sublattices")->check(CLI::Range(0.0, 1.0));
    cam->add_option("--jobs", cp.jobs, "worker threads")->check(CLI::PositiveNumber);
    cam->add_option("--out", cp.out, "corpus directory for disagreements");
    common(cam, true);

    auto* rep = app.add_subcommand("replay", "rerun a report from its echoed inputs");
    rep->add_option("report", report_file, "report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_input;
    }

    try {
        std::optional<Field> fb;
        if (!field.empty()) fb = Field::parse(field);
        if (cam->parsed() && !field.empty()) cp.field = field;
        if (inv->parsed()) return emit(cmd_invariants(read_lattice_file(file1, fb), o));
        if (dec->parsed()) return emit(cmd_decide(read_lattice_file(file1, fb), read_lattice_file(file2, fb), o));
        if (cls->parsed()) return emit(cmd_classify(read_lattice_file(file1, fb), read_lattice_file(file2, fb), o));
        if (orc->parsed()) return emit(cmd_oracle(read_lattice_file(file1, fb), read_lattice_file(file2, fb), o));
        if (cam->parsed()) return emit(cmd_campaign(cp, o));
        if (rep->parsed()) {
            std::ifstream f(report_file);
            if (!f) throw InvalidInput("cannot open " + report_file);
            Json r;
            try {
                r = Json::parse(f);
            } catch (const Json::parse_error& e) {
                throw InvalidInput(report_file + ": " + e.what());
            }
            return emit(cmd_replay(r));
        }
    } catch (const InvalidInput& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const InsufficientPrecision& e) {
        std::cerr << "precision exhausted: " << e.what() << "\n";
        std::cerr << "hint: pass a smaller --precision for the oracle, or use a field of lower ramification\n";
        return exit_exhausted;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        std::cerr << "hint: raise --budget\n";
        return exit_exhausted;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_ok;
}
