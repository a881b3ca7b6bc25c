#include "cli.hpp"

int main(int argc, char** argv)
{
    return sebchoa::cli::run_cli(argc, argv);
}
