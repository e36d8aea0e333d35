#include <iostream>
#include <string>
#include <vector>

#include "gevrey_bbm/cli.h"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return gevrey_bbm::cli::run(args, std::cout, std::cerr);
}
