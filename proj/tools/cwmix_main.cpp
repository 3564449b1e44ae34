#include "cwmix/cli.hpp"

int main(int argc, char** argv) { return cwmix::dispatch(argc, argv); }
