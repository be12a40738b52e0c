#include "commands.hpp"

int main(int argc, char** argv) { return solitwave::app::run(argc, argv); }
