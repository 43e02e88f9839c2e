#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fput/grid.hpp"

namespace fput {

using json = nlohmann::json;

inline constexpr const char* kFormatVersion = "fput-1";

// Column CSV on a grid. The first line is "# " followed by a one-line JSON header
// carrying L, N and any metadata; the second line names the columns; values use %.17g.
struct ColumnTable {
    json header;
    std::vector<std::string> names;
    std::vector<Vec> columns;

    const Vec& column(const std::string& name) const;
    bool has(const std::string& name) const;
};

void write_table_csv(const std::filesystem::path& path, const ColumnTable& table);
ColumnTable read_table_csv(const std::filesystem::path& path);

// x plus the given fields; header gets L and N from the grid.
void write_fields_csv(const std::filesystem::path& path, const GridPtr& grid,
                      const std::vector<std::pair<std::string, const Vec*>>& fields, json meta = json::object());

// Rebuilds the grid from the header and checks the x column against it.
GridPtr grid_from_table(const ColumnTable& t);

// Two-column whitespace data for gnuplot.
void write_xy_dat(const std::filesystem::path& path, const Vec& x, const Vec& y, const std::string& comment = {});

void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

json to_json(const Vec& v);

}  // namespace fput
