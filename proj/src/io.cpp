#include "fput/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fput {
namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return os;
}

}  // namespace

const Vec& ColumnTable::column(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return columns[i];
    throw std::out_of_range("missing column '" + name + "'");
}

bool ColumnTable::has(const std::string& name) const {
    for (const auto& n : names)
        if (n == name) return true;
    return false;
}

void write_table_csv(const std::filesystem::path& path, const ColumnTable& t) {
    if (t.names.size() != t.columns.size()) throw std::invalid_argument("write_table_csv: names/columns mismatch");
    auto os = open_out(path);
    os << "# " << t.header.dump() << '\n';
    for (size_t i = 0; i < t.names.size(); ++i) os << (i ? "," : "") << t.names[i];
    os << '\n';
    size_t rows = t.columns.empty() ? 0 : t.columns[0].size();
    for (size_t r = 0; r < rows; ++r) {
        for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << fmt17(t.columns[i][r]);
        os << '\n';
    }
}

ColumnTable read_table_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    ColumnTable t;
    std::string line;
    std::getline(is, line);
    if (line.rfind("# ", 0) != 0) throw std::runtime_error(path.string() + ": missing JSON header line");
    t.header = json::parse(line.substr(2));
    std::getline(is, line);
    {
        std::stringstream ss(line);
        std::string name;
        while (std::getline(ss, name, ',')) t.names.push_back(name);
    }
    t.columns.assign(t.names.size(), {});
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        size_t i = 0;
        while (std::getline(ss, cell, ',')) {
            if (i >= t.columns.size()) throw std::runtime_error(path.string() + ": ragged row");
            t.columns[i++].push_back(std::stod(cell));
        }
        if (i != t.columns.size()) throw std::runtime_error(path.string() + ": ragged row");
    }
    return t;
}

void write_fields_csv(const std::filesystem::path& path, const GridPtr& grid,
                      const std::vector<std::pair<std::string, const Vec*>>& fields, json meta) {
    ColumnTable t;
    t.header = std::move(meta);
    t.header["format"] = kFormatVersion;
    t.header["L"] = grid->L;
    t.header["N"] = grid->N;
    t.names.push_back("x");
    t.columns.push_back(grid->x);
    for (const auto& [name, v] : fields) {
        if (static_cast<int>(v->size()) != grid->N) throw std::invalid_argument("field '" + name + "' has wrong size");
        t.names.push_back(name);
        t.columns.push_back(*v);
    }
    write_table_csv(path, t);
}

GridPtr grid_from_table(const ColumnTable& t) {
    GridPtr g = make_grid(t.header.at("L").get<double>(), t.header.at("N").get<int>());
    const Vec& x = t.column("x");
    if (static_cast<int>(x.size()) != g->N || sup_diff(x, g->x) > 1e-12 * g->L)
        throw std::runtime_error("table x column does not match its (L, N) header");
    return g;
}

void write_xy_dat(const std::filesystem::path& path, const Vec& x, const Vec& y, const std::string& comment) {
    if (x.size() != y.size()) throw std::invalid_argument("write_xy_dat: size mismatch");
    auto os = open_out(path);
    if (!comment.empty()) os << "# " << comment << '\n';
    for (size_t i = 0; i < x.size(); ++i) os << fmt17(x[i]) << ' ' << fmt17(y[i]) << '\n';
}

void write_json(const std::filesystem::path& path, const json& j) {
    auto os = open_out(path);
    os << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return json::parse(is);
}

json to_json(const Vec& v) {
    json a = json::array();
    for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
    return a;
}

}  // namespace fput
