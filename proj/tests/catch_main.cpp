// Catch2 amalgamated implementation (system-provided single-file release).
#include <catch2/catch_amalgamated.cpp>
