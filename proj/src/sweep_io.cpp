#include "cdsim/sweep_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cdsim {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12e", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw std::invalid_argument("bad number: " + s);
    return v;
}

std::vector<std::string> non_empty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur))
        if (!cur.empty()) lines.push_back(cur);
    return lines;
}

bool is_axis_name(const std::string& name) {
    return name == "p" || name == "theta1" || name == "theta2" || name == "theta3" ||
           name == "theta4";
}

}  // namespace

std::string emit_csv(const SweepResult& result) {
    std::string out;
    for (const auto& kv : result.metadata) out += "# " + kv.first + "=" + kv.second + "\n";
    std::string header;
    for (const SweepAxis& ax : result.axes) header += (header.empty() ? "" : ",") + ax.name;
    for (const std::string& m : result.metric_names) header += (header.empty() ? "" : ",") + m;
    out += header + "\n";
    for (const auto& rec : result.records) {
        std::string line;
        for (double v : rec) line += (line.empty() ? "" : ",") + fmt17(v);
        out += line + "\n";
    }
    return out;
}

SweepResult parse_csv(const std::string& text) {
    SweepResult result;
    std::vector<std::string> lines = non_empty_lines(text);
    std::size_t i = 0;
    for (; i < lines.size() && lines[i].rfind("#", 0) == 0; ++i) {
        std::string body = lines[i].substr(1);
        if (!body.empty() && body.front() == ' ') body.erase(0, 1);
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad metadata line: " + lines[i]);
        result.metadata.push_back({body.substr(0, eq), body.substr(eq + 1)});
    }
    if (i >= lines.size()) throw std::invalid_argument("missing CSV header");
    const std::vector<std::string> header = split(lines[i++], ',');

    std::size_t n_axes = 0;
    while (n_axes < header.size() && is_axis_name(header[n_axes])) ++n_axes;
    for (std::size_t c = 0; c < n_axes; ++c) result.axes.push_back({header[c], {}});
    for (std::size_t c = n_axes; c < header.size(); ++c) result.metric_names.push_back(header[c]);

    for (; i < lines.size(); ++i) {
        const std::vector<std::string> cells = split(lines[i], ',');
        if (cells.size() != header.size())
            throw std::invalid_argument("record width does not match header");
        std::vector<double> rec;
        for (const std::string& c : cells) rec.push_back(parse_double(c));
        result.records.push_back(std::move(rec));
    }

    // Axis grids: unique values in order of first appearance.
    for (std::size_t c = 0; c < n_axes; ++c) {
        std::vector<double>& vals = result.axes[c].values;
        for (const auto& rec : result.records) {
            bool seen = false;
            for (double v : vals) seen |= v == rec[c];
            if (!seen) vals.push_back(rec[c]);
        }
    }
    std::size_t expected = 1;
    for (const SweepAxis& ax : result.axes) expected *= ax.values.size();
    if (!result.axes.empty() && expected != result.records.size())
        throw std::invalid_argument("record count does not match axis grid sizes");
    return result;
}

std::string emit_json(const SweepResult& result) {
    nlohmann::json j;
    j["axes"] = nlohmann::json::array();
    for (const SweepAxis& ax : result.axes)
        j["axes"].push_back({{"name", ax.name}, {"values", ax.values}});
    j["metadata"] = nlohmann::json::object();
    for (const auto& kv : result.metadata) j["metadata"][kv.first] = kv.second;
    j["metric_names"] = result.metric_names;
    j["records"] = result.records;
    return j.dump(2) + "\n";
}

std::string emit_golden_csv(const std::vector<GoldenRow>& rows) {
    std::string out = "form_name,p,theta1,theta2,theta3,theta4,value\n";
    for (const GoldenRow& r : rows) {
        out += r.form;
        out += "," + fmt12(r.p);
        for (double t : r.theta) out += "," + fmt12(t);
        out += "," + fmt12(r.value) + "\n";
    }
    return out;
}

std::vector<GoldenRow> parse_golden_csv(const std::string& text) {
    const std::vector<std::string> lines = non_empty_lines(text);
    if (lines.empty() || lines[0] != "form_name,p,theta1,theta2,theta3,theta4,value")
        throw std::invalid_argument("bad golden header");
    std::vector<GoldenRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> cells = split(lines[i], ',');
        if (cells.size() != 7) throw std::invalid_argument("bad golden row: " + lines[i]);
        GoldenRow r;
        r.form = cells[0];
        r.p = parse_double(cells[1]);
        for (int t = 0; t < 4; ++t) r.theta[t] = parse_double(cells[2 + t]);
        r.value = parse_double(cells[6]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace cdsim
