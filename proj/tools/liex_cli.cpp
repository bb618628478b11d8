#include "liex/casimir.hpp"
#include "liex/classify.hpp"
#include "liex/dynamics.hpp"
#include "liex/io.hpp"
#include "liex/transform.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace liex;

namespace {

enum Exit { kOk = 0, kViolation = 1, kParse = 2, kOrder = 3, kObstruction = 4, kDimension = 5 };

// writes only after the whole text is ready, so failures leave no partial file
void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("not a number: " + item);
        }
    }
    return out;
}

ExtensionTensor load_valid(const std::string& path) {
    TensorDocument doc = read_document(path);
    return validate(doc.tensor);
}

int cmd_validate(const std::string& path) {
    TensorDocument doc = read_document(path);
    if (auto v = find_violation(doc.tensor)) {
        std::cout << "invalid: " << v->describe() << "\n";
        return kViolation;
    }
    std::cout << "valid (order " << doc.tensor.order() << ", semidirect " << (doc.tensor.semidirect() ? "yes" : "no")
              << ")\n";
    return kOk;
}

int cmd_classify(const std::string& path, const std::string& witness_path) {
    const ExtensionTensor t = load_valid(path);
    Classification c = classify(t);
    if (!(liex::apply(t, c.witness) == c.normal_form)) throw Error("witness does not replay");
    if (!witness_path.empty()) {
        Json j{{"label", c.label.name}, {"semidirect", c.label.semidirect}, {"witness", to_json(c.witness)}};
        write_file(witness_path, j.dump(2) + "\n");
    }
    std::cout << c.label.str() << "\n";
    return kOk;
}

struct TableEntry {
    std::string label;
    bool semidirect;
    std::vector<CasimirFamily> families;
};

std::vector<TableEntry> load_tables() {
    Json j = read_json_file(fixtures_dir() + "/casimir_tables.json");
    std::vector<TableEntry> out;
    for (const Json& e : j.at("cases")) {
        TableEntry te{e.at("label").get<std::string>(), e.at("semidirect").get<bool>(), {}};
        const int order = e.at("n").get<int>();
        for (const Json& f : e.at("families")) te.families.push_back(parse_family(f.get<std::string>(), order, te.semidirect));
        out.push_back(std::move(te));
    }
    return out;
}

int cmd_casimir(const std::string& path, bool verify, int jobs) {
    ExtensionTensor t = load_valid(path);
    std::vector<CasimirFamily> fams;
    std::string note;
    try {
        fams = synthesize_casimirs(t);
    } catch (const PreconditionViolation&) {
        Classification c = classify(t);
        t = c.normal_form;
        note = "normal form " + c.label.str();
        fams = synthesize_casimirs(t);
    }
    std::ostringstream out;
    if (!note.empty()) out << "(" << note << ")\n";
    std::vector<ConditionResult> checks(fams.size());
    if (verify) {
        const auto n = static_cast<std::size_t>(std::max(1, jobs));
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < n; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < fams.size(); i += n) checks[i] = casimir_condition_check(t, fams[i]);
            });
        for (auto& th : pool) th.join();
    }
    bool ok = true;
    for (std::size_t i = 0; i < fams.size(); ++i) {
        out << to_notation(fams[i]);
        if (verify) {
            out << "    [" << (checks[i].pass ? "Pass" : "Fail") << "]";
            ok = ok && checks[i].pass;
        }
        out << "\n";
    }
    if (verify) {
        std::optional<Classification> c;
        try {
            c = classify(t);
        } catch (const Error&) {
        }
        if (c && liex::apply(t, c->witness) == t) {
            for (const TableEntry& te : load_tables()) {
                if (te.label != c->label.name || te.semidirect != t.semidirect()) continue;
                bool match = same_families(fams, te.families);
                bool fixture_ok = true;
                for (const CasimirFamily& f : te.families) fixture_ok = fixture_ok && casimir_condition_check(t, f).pass;
                out << "table " << c->label.str() << ": " << (match ? "match" : "MISMATCH") << ", fixture "
                    << (fixture_ok ? "Pass" : "Fail") << "\n";
                ok = ok && match && fixture_ok;
            }
        }
    }
    std::cout << out.str();
    return ok ? kOk : kViolation;
}

struct SimulateArgs {
    std::string path, preset, inertia = "1,2,3", hamiltonian, initial, out, summary;
    double dt = 1e-3;
    long steps = 10000;
    long sample_every = 100;
};

int cmd_simulate(const SimulateArgs& a) {
    ExtensionTensor t;
    HamiltonianSpec h;
    if (a.preset == "rigid-body") {
        t = ExtensionTensor(0, true);
        t(0, 0, 0) = 1;
        std::vector<double> in = parse_doubles(a.inertia);
        if (in.size() != 3) throw DimensionMismatch("--inertia needs three values");
        h = HamiltonianSpec::rigid_body({in[0], in[1], in[2]});
    } else if (a.preset == "heavy-top") {
        t = leibniz(1, true);
        h = HamiltonianSpec::identity(2);
    } else if (!a.preset.empty()) {
        throw ParseError("unknown preset " + a.preset);
    } else {
        if (a.path.empty()) throw ParseError("simulate needs a tensor file or --preset");
        t = load_valid(a.path);
        h = HamiltonianSpec::identity(t.dim());
    }
    if (!a.hamiltonian.empty()) {
        Json j = read_json_file(a.hamiltonian);
        const Json& rows = j.contains("a") ? j.at("a") : j;
        if (!rows.is_array()) throw ParseError("Hamiltonian must be a matrix");
        const auto n = static_cast<Index>(rows.size());
        h.a = Eigen::MatrixXd(n, n);
        for (Index r = 0; r < n; ++r) {
            if (!rows[r].is_array() || static_cast<Index>(rows[r].size()) != n)
                throw DimensionMismatch("Hamiltonian matrix is not square");
            for (Index c = 0; c < n; ++c) h.a(r, c) = rows[r][c].get<double>();
        }
    }
    if (h.a.rows() != 3 * t.dim())
        throw DimensionMismatch("Hamiltonian is " + std::to_string(h.a.rows()) + "x" + std::to_string(h.a.cols()) +
                                ", tensor needs " + std::to_string(3 * t.dim()));
    Eigen::VectorXd y0(3 * t.dim());
    if (a.initial.empty()) {
        for (Index k = 0; k < y0.size(); ++k) y0(k) = 1.0 / static_cast<double>(1 + k / 3) + 0.1 * static_cast<double>(k % 3);
        if (t.dim() == 1) y0 << 1, 1, 1;
    } else {
        std::vector<double> v = parse_doubles(a.initial);
        if (static_cast<Index>(v.size()) != y0.size())
            throw DimensionMismatch("--initial needs " + std::to_string(y0.size()) + " values");
        for (Index k = 0; k < y0.size(); ++k) y0(k) = v[static_cast<std::size_t>(k)];
    }
    TrajectoryRecord rec = simulate(t, h, FieldState::from_stacked(y0), a.dt, a.steps, casimir_monitors(t), a.sample_every);
    if (!a.out.empty()) {
        std::ostringstream csv;
        write_csv(csv, rec);
        write_file(a.out, csv.str());
    }
    Json summary{{"dt", a.dt}, {"steps", a.steps}, {"drift", Json::object()}};
    std::ostringstream table;
    table << "monitor        relative drift\n";
    for (std::size_t m = 0; m < rec.monitor_names.size(); ++m) {
        summary["drift"][rec.monitor_names[m]] = rec.drift[m];
        std::ostringstream line;
        line.width(14);
        line << std::left << rec.monitor_names[m] << " " << std::scientific << rec.drift[m] << "\n";
        table << line.str();
    }
    if (!a.summary.empty()) write_file(a.summary, summary.dump(2) + "\n");
    std::cout << table.str();
    return kOk;
}

int cmd_catalog(int order) {
    Json docs = Json::array();
    for (const CatalogEntry& e : catalog(order)) {
        TensorDocument d{e.tensor, Json{{"name", e.label.name}}};
        docs.push_back(to_json(d));
    }
    std::cout << docs.dump(2) << "\n";
    return kOk;
}

int cmd_leibniz(int order, bool semidirect) {
    TensorDocument d{leibniz(order, semidirect), Json{{"name", "leibniz-" + std::to_string(order)}}};
    std::cout << to_json(d).dump(2) << "\n";
    return kOk;
}

int cmd_crmhd(const std::string& beta) {
    TensorDocument d{crmhd(Scalar::parse(beta)), Json{{"name", "crmhd"}, {"beta", beta}}};
    std::cout << to_json(d).dump(2) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tools for Lie algebra extension brackets"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for verification")->check(CLI::PositiveNumber);

    std::string path, witness;
    auto* validate_cmd = app.add_subcommand("validate", "check the symmetry and Jacobi laws");
    validate_cmd->add_option("path", path, "tensor document")->required();

    auto* classify_cmd = app.add_subcommand("classify", "reduce to a catalog normal form");
    classify_cmd->add_option("path", path, "tensor document")->required();
    classify_cmd->add_option("--witness", witness, "write the witness chain here");

    bool verify = false;
    auto* casimir_cmd = app.add_subcommand("casimir", "synthesize Casimir families");
    casimir_cmd->add_option("path", path, "tensor document")->required();
    casimir_cmd->add_flag("--verify", verify, "check every family and compare with the table fixtures");
    casimir_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "integrate the so(3) realization");
    simulate_cmd->add_option("path", sim.path, "tensor document");
    simulate_cmd->add_option("--preset", sim.preset, "rigid-body or heavy-top");
    simulate_cmd->add_option("--inertia", sim.inertia, "I1,I2,I3 for the rigid body");
    simulate_cmd->add_option("--hamiltonian", sim.hamiltonian, "JSON matrix A with H = 1/2 l^T A l");
    simulate_cmd->add_option("--initial", sim.initial, "comma-separated initial components");
    simulate_cmd->add_option("--dt", sim.dt, "step size")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--steps", sim.steps, "number of steps")->check(CLI::NonNegativeNumber);
    simulate_cmd->add_option("--sample-every", sim.sample_every, "CSV sampling stride");
    simulate_cmd->add_option("--out", sim.out, "trajectory CSV");
    simulate_cmd->add_option("--summary", sim.summary, "drift summary JSON");

    int order = 0;
    bool semidirect = false;
    auto* catalog_cmd = app.add_subcommand("catalog", "print the normal forms of one order");
    catalog_cmd->add_option("--order", order, "1..4")->required();
    auto* leibniz_cmd = app.add_subcommand("leibniz", "print a Leibniz extension");
    leibniz_cmd->add_option("--order", order, "order n >= 1")->required();
    leibniz_cmd->add_flag("--semidirect", semidirect, "append the semisimple slot");
    std::string beta = "1";
    auto* crmhd_cmd = app.add_subcommand("crmhd", "print the CRMHD tensor");
    crmhd_cmd->add_option("--beta", beta, "nonzero rational");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*validate_cmd) return cmd_validate(path);
        if (*classify_cmd) return cmd_classify(path, witness);
        if (*casimir_cmd) return cmd_casimir(path, verify, jobs);
        if (*simulate_cmd) return cmd_simulate(sim);
        if (*catalog_cmd) return cmd_catalog(order);
        if (*leibniz_cmd) return cmd_leibniz(order, semidirect);
        if (*crmhd_cmd) return cmd_crmhd(beta);
    } catch (const ParseError& e) {
        std::cerr << "ParseError: " << e.what() << "\n";
        return kParse;
    } catch (const OrderTooHigh& e) {
        std::cerr << "OrderTooHigh: " << e.what() << "\n";
        return kOrder;
    } catch (const SynthesisObstruction& e) {
        std::cerr << "SynthesisObstruction: " << e.what() << "\n";
        return kObstruction;
    } catch (const DimensionMismatch& e) {
        std::cerr << "DimensionMismatch: " << e.what() << "\n";
        return kDimension;
    } catch (const SymmetryViolation& e) {
        std::cerr << e.what() << "\n";
        return kViolation;
    } catch (const CommutationViolation& e) {
        std::cerr << e.what() << "\n";
        return kViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolation;
    }
    return kOk;
}
