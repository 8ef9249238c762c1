#include <iostream>
#include <string>
#include <vector>

#include "mban/cli.hh"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mban::dispatch(args, std::cout, std::cerr);
}
