#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "equiloci/cli.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
}

std::string flag_value(const std::vector<std::string>& args, const std::string& flag) {
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == flag) return args[i + 1];
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const equiloci::RunOutput out = equiloci::run_command(args);

    const std::string json_path = flag_value(args, "--json");
    const std::string csv_path = flag_value(args, "--csv");
    const std::string svg_path = flag_value(args, "--svg");
    if (!json_path.empty()) write_file(json_path, out.report_json);
    if (!csv_path.empty()) write_file(csv_path, out.csv);
    if (!svg_path.empty()) write_file(svg_path, out.svg);

    std::cout << out.report_json;
    return out.exit_code;
}
