#include <algorithm>
#include "gep/milp.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace gep::milp {

namespace {

// Shortest round-trip decimal representation, so write -> parse -> write is
// byte-identical and exact.
std::string fmt_num(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

double parse_num(const std::string& tok) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw std::runtime_error("MPS: bad numeric field '" + tok + "'");
    return v;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

}  // namespace

void write_mps(const Model& model, std::ostream& out) {
    if (model.num_variables() == 0) throw std::invalid_argument("write_mps: empty model");
    const auto& vars = model.variables();
    const auto& cons = model.constraints();

    out << "NAME " << model.name << "\n";
    out << "ROWS\n";
    out << " N OBJ\n";
    for (const auto& c : cons)
        out << " " << static_cast<char>(c.sense) << " " << c.name << "\n";

    // column-major view of the constraint matrix
    std::vector<std::vector<std::pair<int, double>>> cols(vars.size());
    for (int i = 0; i < static_cast<int>(cons.size()); ++i)
        for (const auto& [id, coeff] : cons[i].terms) cols[id].emplace_back(i, coeff);

    out << "COLUMNS\n";
    bool in_int = false;
    int marker = 0;
    for (const auto& v : vars) {
        const bool want_int = v.kind == VarKind::Binary;
        if (want_int && !in_int) {
            out << " M" << marker++ << " 'MARKER' 'INTORG'\n";
            in_int = true;
        } else if (!want_int && in_int) {
            out << " M" << marker++ << " 'MARKER' 'INTEND'\n";
            in_int = false;
        }
        const double obj = model.objective()[v.id];
        bool emitted = false;
        if (obj != 0.0) {
            out << " " << v.name << " OBJ " << fmt_num(obj) << "\n";
            emitted = true;
        }
        for (const auto& [row, coeff] : cols[v.id]) {
            out << " " << v.name << " " << cons[row].name << " " << fmt_num(coeff) << "\n";
            emitted = true;
        }
        // keep empty columns visible to the reader
        if (!emitted) out << " " << v.name << " OBJ 0\n";
    }
    if (in_int) out << " M" << marker++ << " 'MARKER' 'INTEND'\n";

    out << "RHS\n";
    for (const auto& c : cons)
        if (c.rhs != 0.0) out << " RHS " << c.name << " " << fmt_num(c.rhs) << "\n";
    if (model.objective_constant() != 0.0)
        out << " RHS OBJ " << fmt_num(-model.objective_constant()) << "\n";

    out << "BOUNDS\n";
    for (const auto& v : vars) {
        if (v.kind == VarKind::Binary) {
            // explicit bounds inside the integer markers
            out << " LO BND " << v.name << " " << fmt_num(v.lower) << "\n";
            out << " UP BND " << v.name << " " << fmt_num(v.upper) << "\n";
            continue;
        }
        const bool lo_inf = std::isinf(v.lower);
        const bool up_inf = std::isinf(v.upper);
        if (lo_inf && up_inf) {
            out << " FR BND " << v.name << "\n";
        } else if (v.lower == v.upper) {
            out << " FX BND " << v.name << " " << fmt_num(v.lower) << "\n";
        } else {
            if (lo_inf)
                out << " MI BND " << v.name << "\n";
            else if (v.lower != 0.0)
                out << " LO BND " << v.name << " " << fmt_num(v.lower) << "\n";
            if (!up_inf) out << " UP BND " << v.name << " " << fmt_num(v.upper) << "\n";
        }
    }
    out << "ENDATA\n";
}

void write_mps_file(const Model& model, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    write_mps(model, f);
    if (!f) throw std::runtime_error("write failed: " + path);
}

Model parse_mps(std::istream& in) {
    Model model;
    std::string line, section, obj_row;
    std::unordered_map<std::string, int> row_ids;        // constraint name -> index
    std::vector<std::string> row_names;
    std::vector<Sense> row_senses;
    std::vector<std::vector<std::pair<int, double>>> row_terms;  // per row: (var, coeff)
    std::vector<double> row_rhs;
    std::unordered_map<std::string, int> var_ids;
    bool in_int = false;

    auto require_var = [&](const std::string& name) -> int {
        auto it = var_ids.find(name);
        if (it != var_ids.end()) return it->second;
        int id = model.add_variable(name, in_int ? VarKind::Binary : VarKind::Continuous,
                                    in_int ? 0.0 : 0.0, in_int ? 1.0 : kInf);
        var_ids.emplace(name, id);
        return id;
    };

    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '*') continue;  // comment
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!std::isspace(static_cast<unsigned char>(line[0]))) {
            section = toks[0];
            if (section == "NAME" && toks.size() > 1) model.name = toks[1];
            if (section == "ENDATA") break;
            continue;
        }
        if (section == "ROWS") {
            if (toks.size() != 2) throw std::runtime_error("MPS: bad ROWS line: " + line);
            if (toks[0] == "N") {
                if (obj_row.empty()) obj_row = toks[1];
                continue;
            }
            Sense s;
            if (toks[0] == "L") s = Sense::LessEqual;
            else if (toks[0] == "G") s = Sense::GreaterEqual;
            else if (toks[0] == "E") s = Sense::Equal;
            else throw std::runtime_error("MPS: unknown row type " + toks[0]);
            row_ids.emplace(toks[1], static_cast<int>(row_names.size()));
            row_names.push_back(toks[1]);
            row_senses.push_back(s);
            row_terms.emplace_back();
            row_rhs.push_back(0.0);
        } else if (section == "COLUMNS") {
            if (std::find(toks.begin(), toks.end(), "'MARKER'") != toks.end()) {
                if (std::find(toks.begin(), toks.end(), "'INTORG'") != toks.end()) in_int = true;
                else if (std::find(toks.begin(), toks.end(), "'INTEND'") != toks.end())
                    in_int = false;
                else throw std::runtime_error("MPS: bad marker line: " + line);
                continue;
            }
            if (toks.size() < 3 || toks.size() % 2 == 0)
                throw std::runtime_error("MPS: bad COLUMNS line: " + line);
            int var = require_var(toks[0]);
            for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                double coeff = parse_num(toks[k + 1]);
                if (toks[k] == obj_row) {
                    model.add_objective_term(var, coeff);
                } else {
                    auto it = row_ids.find(toks[k]);
                    if (it == row_ids.end())
                        throw std::runtime_error("MPS: unknown row " + toks[k]);
                    row_terms[it->second].emplace_back(var, coeff);
                }
            }
        } else if (section == "RHS") {
            if (toks.size() < 3) throw std::runtime_error("MPS: bad RHS line: " + line);
            for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                double v = parse_num(toks[k + 1]);
                if (toks[k] == obj_row) {
                    model.set_objective_constant(-v);
                } else {
                    auto it = row_ids.find(toks[k]);
                    if (it == row_ids.end())
                        throw std::runtime_error("MPS: unknown RHS row " + toks[k]);
                    row_rhs[it->second] = v;
                }
            }
        } else if (section == "RANGES") {
            if (toks.size() < 3) throw std::runtime_error("MPS: bad RANGES line: " + line);
            for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                auto it = row_ids.find(toks[k]);
                if (it == row_ids.end()) throw std::runtime_error("MPS: unknown RANGES row " + toks[k]);
                const int r = it->second;
                const double rng = parse_num(toks[k + 1]);
                // a ranged row becomes the base row plus its companion bound
                double lo, hi;
                switch (row_senses[r]) {
                    case Sense::LessEqual: hi = row_rhs[r]; lo = hi - std::abs(rng); break;
                    case Sense::GreaterEqual: lo = row_rhs[r]; hi = lo + std::abs(rng); break;
                    case Sense::Equal:
                        if (rng >= 0) { lo = row_rhs[r]; hi = lo + rng; }
                        else { hi = row_rhs[r]; lo = hi + rng; }
                        break;
                }
                row_senses[r] = Sense::GreaterEqual;
                row_rhs[r] = lo;
                row_ids.emplace(row_names[r] + "_rng", static_cast<int>(row_names.size()));
                row_names.push_back(row_names[r] + "_rng");
                row_senses.push_back(Sense::LessEqual);
                row_terms.push_back(row_terms[r]);
                row_rhs.push_back(hi);
            }
        } else if (section == "BOUNDS") {
            if (toks.size() < 3) throw std::runtime_error("MPS: bad BOUNDS line: " + line);
            auto it = var_ids.find(toks[2]);
            if (it == var_ids.end()) throw std::runtime_error("MPS: bound on unknown column " + toks[2]);
            Variable v = model.variables()[it->second];
            const std::string& btype = toks[0];
            double val = toks.size() > 3 ? parse_num(toks[3]) : 0.0;
            if (btype == "LO") v.lower = val;
            else if (btype == "UP") v.upper = val;
            else if (btype == "FX") { v.lower = val; v.upper = val; }
            else if (btype == "FR") { v.lower = -kInf; v.upper = kInf; }
            else if (btype == "MI") v.lower = -kInf;
            else if (btype == "PL") v.upper = kInf;
            else if (btype == "BV") { v.lower = 0.0; v.upper = 1.0; model.set_kind(v.id, VarKind::Binary); }
            else throw std::runtime_error("MPS: unknown bound type " + btype);
            model.set_bounds(v.id, v.lower, v.upper);
        } else if (section == "OBJSENSE" || section == "NAME") {
            // minimization is the only supported sense
        } else {
            throw std::runtime_error("MPS: unexpected section " + section);
        }
    }
    for (std::size_t r = 0; r < row_names.size(); ++r)
        model.add_constraint(row_names[r], row_terms[r], row_senses[r], row_rhs[r]);
    return model;
}

Model parse_mps_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return parse_mps(f);
}

std::vector<double> read_solution_file(const Model& model, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::unordered_map<std::string, int> var_ids;
    for (const auto& v : model.variables()) var_ids.emplace(v.name, v.id);
    std::vector<double> values(model.num_variables(), 0.0);
    std::vector<bool> seen(model.num_variables(), false);
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks.size() != 2) throw std::runtime_error("solution file: bad line '" + line + "'");
        auto it = var_ids.find(toks[0]);
        if (it == var_ids.end()) throw std::runtime_error("solution file: unknown variable " + toks[0]);
        values[it->second] = parse_num(toks[1]);
        seen[it->second] = true;
    }
    for (const auto& v : model.variables())
        if (!seen[v.id]) throw std::runtime_error("solution file: missing value for " + v.name);
    return values;
}

}  // namespace gep::milp
