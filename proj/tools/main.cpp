#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "qpt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const qpt::Config config = qpt::parse_config(args);
    if (config.dump_circuit) {
      std::cout << qpt::dump_circuit(config);
      return 0;
    }
    const qpt::Report report = qpt::execute(config);
    std::cout << qpt::emit(report, config.format);
    return 0;
  } catch (const qpt::HelpRequested& help) {
    std::cout << help.text;
    return 0;
  } catch (const qpt::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
