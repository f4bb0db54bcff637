// Byte-exact golden comparisons for the CLI: usage
//   golden_check <neron-binary> <golden-dir> <data-dir>
// Each command runs twice so output determinism is checked as well.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

std::string run(const std::string& cmd, int expected_exit) {
    std::array<char, 4096> chunk{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed: " + cmd);
    size_t got;
    while ((got = fread(chunk.data(), 1, chunk.size(), pipe)) > 0) out.append(chunk.data(), got);
    int status = pclose(pipe);
    int rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (rc != expected_exit)
        throw std::runtime_error("exit " + std::to_string(rc) + " (wanted " +
                                 std::to_string(expected_exit) + "): " + cmd);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Case {
    std::string cmd;
    std::string golden;
    int expected_exit = 0;
};

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::cerr << "usage: golden_check <neron-binary> <golden-dir> <data-dir>\n";
        return 2;
    }
    std::string bin = argv[1], golden = argv[2], data = argv[3];
    std::vector<Case> cases;
    for (const char* p : {"23", "31", "47", "59", "71"}) {
        cases.push_back({bin + " ss " + p, golden + "/ss_" + p + ".txt", 0});
        cases.push_back({bin + " cx " + p, golden + "/cx_" + p + ".txt", 0});
        cases.push_back({bin + " cuspidal " + p + " --json", golden + "/cuspidal_" + p + ".json", 0});
    }
    cases.push_back({bin + " phi " + data + "/theta123.json", golden + "/phi_theta123.txt", 0});
    cases.push_back(
        {bin + " immersion " + data + "/x0p_23.json --json", golden + "/immersion_x0p23.json", 1});
    cases.push_back({bin + " divisor " + data + "/x0p_23.json --divisor " + data +
                         "/cuspidal11_23.json --json",
                     golden + "/divisor_x0p23.json", 0});

    int fails = 0;
    for (const Case& c : cases) {
        try {
            std::string expected = slurp(c.golden);
            std::string first = run(c.cmd, c.expected_exit);
            std::string second = run(c.cmd, c.expected_exit);
            if (first != second) {
                std::cerr << "[FAIL] nondeterministic output: " << c.cmd << "\n";
                ++fails;
                continue;
            }
            if (first != expected) {
                std::cerr << "[FAIL] golden mismatch: " << c.cmd << " vs " << c.golden << "\n";
                ++fails;
                continue;
            }
            std::cout << "[ok] " << c.cmd << "\n";
        } catch (const std::exception& e) {
            std::cerr << "[FAIL] " << e.what() << "\n";
            ++fails;
        }
    }
    if (fails) {
        std::cerr << fails << " golden case(s) failed\n";
        return 1;
    }
    return 0;
}
