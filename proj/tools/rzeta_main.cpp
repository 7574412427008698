#include <iostream>

#include "rzeta/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    rzeta::RunReport report = rzeta::run_command(args);
    std::cout << report.to_text();
    return report.exit_code;
}
