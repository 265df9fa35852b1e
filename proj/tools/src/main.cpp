#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) {
  return fdw::cli::run_app({argv, argv + argc}, std::cout, std::cerr);
}
