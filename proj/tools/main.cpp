#include <iostream>
#include <string>
#include <vector>

#include "asvlim/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const asvlim::RunConfig cfg = asvlim::parse_config(args);
        const asvlim::RunOutput out = asvlim::run_command(cfg);
        const int rc = asvlim::emit_report(out, cfg);
        if (rc != 0) return rc;
        return out.ok ? 0 : 1;
    } catch (const asvlim::HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const asvlim::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
