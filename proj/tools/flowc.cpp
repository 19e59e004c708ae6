#include "flowc/cli.hpp"

int main(int argc, char** argv)
{
    return flowc::cli::main(argc, argv);
}
