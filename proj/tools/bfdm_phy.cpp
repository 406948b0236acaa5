// SPDX-License-Identifier: Apache-2.0
//
// bfdm-phy: command-line front end for the bfdm simulation library.
// Subcommands are registered as the corresponding library modules land.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "bfdm/types.hpp"

int main(int argc, char** argv) {
    CLI::App app{"BFDM pulse-shaped multicarrier simulation toolbox"};
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const bfdm::config_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const bfdm::numeric_error& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
