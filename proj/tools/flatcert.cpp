#include <csignal>

#include "flatcert/cli.hpp"

extern "C" void on_interrupt(int) { flatcert::cli::interrupted = true; }

int main(int argc, char** argv)
{
    std::signal(SIGINT, on_interrupt);
    std::signal(SIGTERM, on_interrupt);
    return flatcert::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
