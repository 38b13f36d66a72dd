#pragma once

#include <array>
#include <string>
#include <vector>

#include "cdsim/analysis.hpp"

namespace cdsim {

// CSV layout: "# key=value" metadata lines, a header row of axis names then
// metric names, then one record per row.  Floats carry 17 significant
// digits so parse(emit(x)) reproduces x bit-exactly.  LF line endings.
std::string emit_csv(const SweepResult& result);
SweepResult parse_csv(const std::string& text);

// JSON object with "axes", "metadata", "records" mirroring SweepResult.
std::string emit_json(const SweepResult& result);

struct GoldenRow {
    std::string form;
    double p = 0.0;
    std::array<double, 4> theta{};
    double value = 0.0;
};

// Golden layout: header form_name,p,theta1,theta2,theta3,theta4,value with
// 1e-12 print precision.
std::string emit_golden_csv(const std::vector<GoldenRow>& rows);
std::vector<GoldenRow> parse_golden_csv(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace cdsim
