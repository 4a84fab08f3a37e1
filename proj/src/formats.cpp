#include "wmc/formats.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "wmc/errors.hpp"

namespace wmc::io {

namespace fs = std::filesystem;

std::string format_number(double x) {
    if (x == 0.0) return "0";  // folds -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

Rational parse_weight(const json& v) {
    if (v.is_number_integer()) return Rational(BigInt(v.dump()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw ParseError("weights must be integers or \"p/q\" strings, got " + v.dump());
}

json weight_to_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return to_string(q);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

int to_int(const std::string& s, std::size_t line) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + s + "'", line);
    }
    if (used != s.size()) throw ParseError("expected an integer, got '" + s + "'", line);
    return v;
}

double to_double(const std::string& s, std::size_t line) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + s + "'", line);
    }
    if (used != s.size()) throw ParseError("expected a number, got '" + s + "'", line);
    return v;
}

void write_patch_rows(std::ostream& os, const cutproject::ColoredPatch& patch, const stochastic::Realization* real) {
    os << "d1,d2,d3,d4,x,y,xs,ys,color" << (real ? ",kept" : "") << "\n";
    const auto& pts = patch.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        os << p.lattice.d[0] << ',' << p.lattice.d[1] << ',' << p.lattice.d[2] << ',' << p.lattice.d[3] << ','
           << format_number(p.phys.x()) << ',' << format_number(p.phys.y()) << ',' << format_number(p.internal.x())
           << ',' << format_number(p.internal.y()) << ',' << p.colour;
        if (real) os << ',' << (real->kept[i] ? 1 : 0);
        os << "\n";
    }
}

}  // namespace

cyclic::CyclicWeighting parse_weighting(const json& j) {
    if (!j.is_object()) throw ParseError("weighting must be a JSON object");
    for (const char* key : {"N", "windows", "weights"})
        if (!j.contains(key)) throw ParseError(std::string("weighting is missing \"") + key + "\"");
    if (!j["N"].is_number_integer()) throw ParseError("\"N\" must be an integer");
    if (!j["windows"].is_array() || !j["weights"].is_array())
        throw ParseError("\"windows\" and \"weights\" must be arrays");
    cyclic::CyclicWeighting w;
    w.N = j["N"].get<int>();
    for (const auto& win : j["windows"]) {
        if (!win.is_array()) throw ParseError("each window must be an array of residues");
        std::vector<int> residues;
        for (const auto& r : win) {
            if (!r.is_number_integer()) throw ParseError("window residues must be integers, got " + r.dump());
            residues.push_back(r.get<int>());
        }
        w.windows.push_back(std::move(residues));
    }
    for (const auto& v : j["weights"]) w.weights.push_back(parse_weight(v));
    w.validate();
    return w;
}

cyclic::CyclicWeighting load_weighting(const fs::path& path) { return parse_weighting(read_json_file(path)); }

json weighting_to_json(const cyclic::CyclicWeighting& w) {
    json j;
    j["N"] = w.N;
    j["windows"] = w.windows;
    json weights = json::array();
    for (const auto& q : w.weights) weights.push_back(weight_to_json(q));
    j["weights"] = weights;
    return j;
}

std::optional<cyclic::FactoredPolynomial> parse_factors(const json& j) {
    if (!j.is_object() || !j.contains("factors")) return std::nullopt;
    const auto& f = j["factors"];
    if (!f.is_array()) throw ParseError("\"factors\" must be an array of coefficient arrays");
    cyclic::FactoredPolynomial p;
    for (const auto& factor : f) {
        if (!factor.is_array() || factor.empty()) throw ParseError("each factor must be a nonempty coefficient array");
        std::vector<BigInt> coeffs;
        for (const auto& c : factor) {
            if (!c.is_number_integer()) throw ParseError("factor coefficients must be integers, got " + c.dump());
            coeffs.emplace_back(c.dump());
        }
        p.factors.push_back(std::move(coeffs));
    }
    p.validate();
    return p;
}

WeightingFile load_weighting_file(const fs::path& path) {
    const json j = read_json_file(path);
    return {parse_weighting(j), parse_factors(j)};
}

void write_pattern_table_csv(std::ostream& os, const cyclic::PatternTable& table) {
    for (int i = 1; i <= table.length(); ++i) os << "r_" << i << ",";
    os << "value\n";
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        for (int r : cyclic::decode_tuple(idx, table.modulus(), table.length())) os << r << ",";
        os << to_string(table.at(idx)) << "\n";
    }
}

PatchMetadata metadata_of(const cutproject::ColoredPatch& patch, const cutproject::SchemeEmbedding& emb) {
    PatchMetadata m;
    m.R = patch.radius();
    m.margin = patch.margin();
    if (const auto& d = patch.window().dodecagon()) {
        m.rho = d->rho;
        m.tau_x = d->centre.x();
        m.tau_y = d->centre.y();
    } else {
        throw ValidationError("only dodecagon windows can be saved with a patch");
    }
    m.count = patch.size();
    m.census = cutproject::color_census(patch);
    m.residuals = emb.residuals;
    return m;
}

json metadata_to_json(const PatchMetadata& m) {
    json j;
    j["R"] = m.R;
    j["margin"] = m.margin;
    j["rho"] = m.rho;
    j["tau"] = {m.tau_x, m.tau_y};
    j["count"] = m.count;
    j["census"] = m.census;
    j["embedding_residuals"] = {
        {"coxeter_order", m.residuals.coxeter_order},
        {"lattice_preserved", m.residuals.lattice_preserved},
        {"orthogonality", format_number(m.residuals.orthogonality)},
        {"equivariance_phys", format_number(m.residuals.equivariance_phys)},
        {"equivariance_internal", format_number(m.residuals.equivariance_internal)},
    };
    return j;
}

PatchMetadata parse_metadata(const json& j) {
    try {
        PatchMetadata m;
        m.R = j.at("R").get<double>();
        m.margin = j.at("margin").get<double>();
        m.rho = j.at("rho").get<double>();
        m.tau_x = j.at("tau").at(0).get<double>();
        m.tau_y = j.at("tau").at(1).get<double>();
        m.count = j.at("count").get<std::size_t>();
        if (j.contains("census")) m.census = j.at("census").get<cutproject::Census>();
        if (j.contains("embedding_residuals")) {
            const auto& r = j.at("embedding_residuals");
            const auto number = [&](const char* key) { return std::stod(r.at(key).get<std::string>()); };
            m.residuals.coxeter_order = r.at("coxeter_order").get<int>();
            m.residuals.lattice_preserved = r.at("lattice_preserved").get<bool>();
            m.residuals.orthogonality = number("orthogonality");
            m.residuals.equivariance_phys = number("equivariance_phys");
            m.residuals.equivariance_internal = number("equivariance_internal");
        }
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("patch metadata: ") + e.what());
    } catch (const std::logic_error& e) {
        throw ParseError(std::string("patch metadata: bad number: ") + e.what());
    }
}

void write_patch_csv(std::ostream& os, const cutproject::ColoredPatch& patch) { write_patch_rows(os, patch, nullptr); }

void write_realization_csv(std::ostream& os, const cutproject::ColoredPatch& patch,
                           const stochastic::Realization& real) {
    write_patch_rows(os, patch, &real);
}

std::vector<cutproject::PatchPoint> read_patch_rows(std::istream& is) {
    std::vector<cutproject::PatchPoint> out;
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw ParseError("empty patch file", 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("d1,d2,d3,d4,x,y,xs,ys,color", 0) != 0) throw ParseError("unexpected patch header '" + line + "'", 1);
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 9 && cells.size() != 10)
            throw ParseError(fmt::format("expected 9 columns, found {}", cells.size()), lineno);
        cutproject::PatchPoint p;
        for (int i = 0; i < 4; ++i) p.lattice.d[i] = to_int(cells[i], lineno);
        if (!cutproject::lattice_contains(p.lattice)) throw ParseError("row is not an F4 lattice point", lineno);
        p.phys = {to_double(cells[4], lineno), to_double(cells[5], lineno)};
        p.internal = {to_double(cells[6], lineno), to_double(cells[7], lineno)};
        p.colour = to_int(cells[8], lineno);
        if (p.colour != cutproject::color_of(p.lattice))
            throw ParseError(fmt::format("colour {} does not match the lattice point", p.colour), lineno);
        out.push_back(p);
    }
    return out;
}

fs::path metadata_path(const fs::path& csv) {
    fs::path meta = csv;
    meta.replace_extension(".json");
    return meta;
}

void save_patch(const fs::path& csv, const cutproject::ColoredPatch& patch, const cutproject::SchemeEmbedding& emb) {
    std::ostringstream rows;
    write_patch_csv(rows, patch);
    write_text_file(csv, rows.str());
    write_text_file(metadata_path(csv), metadata_to_json(metadata_of(patch, emb)).dump(2) + "\n");
}

cutproject::ColoredPatch load_patch(const fs::path& csv) {
    std::ifstream in(csv);
    if (!in) throw ParseError("cannot open patch file " + csv.string());
    auto rows = read_patch_rows(in);
    const auto meta = parse_metadata(read_json_file(metadata_path(csv)));
    if (meta.count != rows.size())
        throw ParseError(fmt::format("metadata lists {} points but {} has {}", meta.count, csv.string(), rows.size()));
    auto window = cutproject::ConvexWindow::regular_dodecagon(meta.rho, {meta.tau_x, meta.tau_y});
    try {
        return cutproject::ColoredPatch(meta.R, meta.margin, std::move(window), std::move(rows));
    } catch (const ValidationError& e) {
        throw ParseError(std::string("inconsistent patch: ") + e.what());
    }
}

stochastic::ThinningConfig load_probabilities(const fs::path& path, std::uint64_t seed) {
    const json j = read_json_file(path);
    if (j.is_object() && j.contains("probabilities")) {
        const auto& p = j["probabilities"];
        if (!p.is_array() || p.size() != 6) throw ParseError("\"probabilities\" must list 6 numbers");
        stochastic::ThinningConfig cfg;
        for (std::size_t i = 0; i < 6; ++i) {
            if (!p[i].is_number()) throw ParseError("probabilities must be numbers");
            cfg.p[i] = p[i].get<double>();
        }
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }
    return stochastic::ThinningConfig::from_weights(cyclic::coefficients_from_weighting(parse_weighting(j)), seed);
}

std::vector<std::vector<cutproject::LatticePoint4>> parse_tuples(const json& j) {
    if (!j.is_array()) throw ParseError("tuple list must be a JSON array");
    std::vector<std::vector<cutproject::LatticePoint4>> out;
    for (const auto& t : j) {
        if (!t.is_array() || t.empty()) throw ParseError("each tuple must be a nonempty array of lattice vectors");
        std::vector<cutproject::LatticePoint4> tuple;
        for (const auto& v : t) {
            if (!v.is_array() || v.size() != 4) throw ParseError("lattice vectors are [d1,d2,d3,d4], got " + v.dump());
            cutproject::LatticePoint4 p;
            for (std::size_t i = 0; i < 4; ++i) {
                if (!v[i].is_number_integer()) throw ParseError("doubled coordinates must be integers");
                p.d[i] = v[i].get<int>();
            }
            if (!cutproject::lattice_contains(p)) throw ParseError("not an F4 lattice vector: " + v.dump());
            tuple.push_back(p);
        }
        out.push_back(std::move(tuple));
    }
    return out;
}

json tuples_to_json(const std::vector<std::vector<cutproject::LatticePoint4>>& tuples) {
    json j = json::array();
    for (const auto& t : tuples) {
        json row = json::array();
        for (const auto& p : t) row.push_back(p.d);
        j.push_back(row);
    }
    return j;
}

json report_to_json(const correlation::CorrelationReport& report) {
    json j;
    j["R"] = report.R;
    j["margin"] = report.margin;
    j["base_points"] = report.base_points;
    j["density"] = format_number(report.density);
    j["window_area"] = format_number(report.window_area);
    j["kappa"] = format_number(report.kappa);
    json records = json::array();
    for (const auto& r : report.records) {
        json z = json::array();
        for (const auto& p : r.z) z.push_back(p.d);
        records.push_back({
            {"n", r.n},
            {"z", z},
            {"residues", r.residues},
            {"area", format_number(r.area)},
            {"M_a", to_string(r.m_a)},
            {"M_b", to_string(r.m_b)},
            {"analytic_a", format_number(r.analytic_a)},
            {"analytic_b", format_number(r.analytic_b)},
            {"analytic_gap", format_number(r.analytic_gap)},
            {"empirical_a", format_number(r.empirical_a.value)},
            {"empirical_a_sigma", format_number(r.empirical_a.sigma)},
            {"empirical_b", format_number(r.empirical_b.value)},
            {"empirical_b_sigma", format_number(r.empirical_b.sigma)},
            {"gap", format_number(r.gap)},
            {"gap_sigma", format_number(r.gap_sigma)},
            {"predicted_a", format_number(r.predicted_a)},
            {"predicted_b", format_number(r.predicted_b)},
            {"discrepancy_a", format_number(r.discrepancy_a)},
            {"discrepancy_b", format_number(r.discrepancy_b)},
            {"matches", r.matches},
            {"verdict", correlation::to_string(r.verdict)},
        });
    }
    j["records"] = records;
    return j;
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace wmc::io
