#include <algorithm>
#include <sstream>

#include "cli_internal.hpp"

namespace ladder::cli {

namespace {

std::string leaf_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object()) {
        for (const auto& [k, inner] : v.items()) flatten(inner, prefix.empty() ? k : prefix + "." + k, out);
    } else if (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); })) {
        for (size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
    } else {
        out.emplace_back(prefix, leaf_text(v));
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Table tabulate(const Json& table) {
    Table t;
    std::vector<std::vector<std::pair<std::string, std::string>>> flat;
    for (const auto& rec : table) {
        std::vector<std::pair<std::string, std::string>> cells;
        flatten(rec, "", cells);
        for (const auto& [k, _] : cells)
            if (std::find(t.columns.begin(), t.columns.end(), k) == t.columns.end()) t.columns.push_back(k);
        flat.push_back(std::move(cells));
    }
    for (const auto& cells : flat) {
        std::vector<std::string> row(t.columns.size());
        for (const auto& [k, v] : cells)
            row[static_cast<size_t>(std::find(t.columns.begin(), t.columns.end(), k) - t.columns.begin())] = v;
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string render_csv(const Json& report) {
    std::ostringstream os;
    if (report.contains("table") && report["table"].is_array()) {
        const Table t = tabulate(report["table"]);
        for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_cell(t.columns[i]);
        os << '\n';
        for (const auto& row : t.rows) {
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << '\n';
        }
        return os.str();
    }
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(report, "", cells);
    os << "key,value\n";
    for (const auto& [k, v] : cells) os << csv_cell(k) << ',' << csv_cell(v) << '\n';
    return os.str();
}

std::string render_ascii(const Json& report) {
    std::ostringstream os;
    Json scalars = Json::object();
    for (const auto& [k, v] : report.items())
        if (k != "table" && k != "diagram") scalars[k] = v;
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(scalars, "", cells);
    size_t key_width = 0;
    for (const auto& [k, _] : cells) key_width = std::max(key_width, k.size());
    for (const auto& [k, v] : cells) os << k << std::string(key_width - k.size(), ' ') << " : " << v << '\n';
    if (report.contains("diagram")) os << '\n' << report["diagram"].get<std::string>();
    if (report.contains("table") && report["table"].is_array() && !report["table"].empty()) {
        const Table t = tabulate(report["table"]);
        std::vector<size_t> w(t.columns.size());
        for (size_t i = 0; i < w.size(); ++i) {
            w[i] = t.columns[i].size();
            for (const auto& row : t.rows) w[i] = std::max(w[i], row[i].size());
        }
        os << '\n';
        for (size_t i = 0; i < w.size(); ++i)
            os << (i ? "  " : "") << t.columns[i] << std::string(w[i] - t.columns[i].size(), ' ');
        os << '\n';
        for (const auto& row : t.rows) {
            for (size_t i = 0; i < w.size(); ++i)
                os << (i ? "  " : "") << std::string(w[i] - row[i].size(), ' ') << row[i];
            os << '\n';
        }
    }
    return os.str();
}

} // namespace

// Adding 0.0 folds -0.0 into 0.0.
Json to_json(Complex z) { return Json{{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}}; }

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (long r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (long c = 0; c < m.cols(); ++c) row.push_back(to_json(Complex(m(r, c))));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render(const Json& report, std::string_view format) {
    if (format == "json") return report.dump(2) + "\n";
    if (format == "csv") return render_csv(report);
    if (format == "ascii") return render_ascii(report);
    throw ConfigError("unknown format '" + std::string(format) + "' (expected json, csv or ascii)");
}

} // namespace ladder::cli
