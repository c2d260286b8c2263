#pragma once

#include <string>
#include <vector>

#include "equiloci/scene.hpp"

namespace equiloci {

struct RunOutput {
    int exit_code = 0;         // 0 ok, 2 validation, 3 math domain, 4 tolerance failure
    std::string report_json;   // deterministic run report
    std::string csv;           // traced-curve rows (equitant)
    std::string svg;           // optional plot, a pure function of the csv content
};

/// Executes one CLI command (arguments after the program name). Pure: reads the scene
/// file, never writes; output files are handled by the binary around this call.
RunOutput run_command(const std::vector<std::string>& args);

/// Renders the parameter-curve and chart-angle panels from a traced-curve CSV.
std::string svg_from_csv(const std::string& csv);

}  // namespace equiloci
