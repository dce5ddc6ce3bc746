// End-to-end checks of the command-line tool: exit codes, output files,
// determinism. Drives the real binary through std::system.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace {

int failures = 0;

#define E2E_CHECK(cond, msg)                                                  \
    do {                                                                      \
        if (!(cond)) {                                                        \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " "      \
                      << (msg) << "\n";                                       \
            ++failures;                                                       \
        }                                                                     \
    } while (0)

std::string cli() { return SPINDEC_CLI_PATH; }

int run(const std::string& args) {
    const std::string cmd = cli() + " " + args + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tmp_path(const char* name) {
    return std::string("/tmp/spindec_e2e_") + std::to_string(::getpid()) + "_" + name;
}

} // namespace

int main() {
    // success paths
    const std::string rate_csv = tmp_path("rate.csv");
    E2E_CHECK(run("entropy-rate --preset mn12 --T 4 --m 10 --out " + rate_csv) == 0,
              "entropy-rate exits 0");
    {
        const std::string body = slurp(rate_csv);
        E2E_CHECK(body.rfind("m,T_K,rate_per_s,tau_dec_s,s,A_J,B_J,Bint_J,rho_kg_m3,c_m_s\n",
                             0) == 0,
                  "entropy-rate header matches the canonical column set");
        E2E_CHECK(body.find("\n10,4,") != std::string::npos, "row carries m and T");
    }

    E2E_CHECK(run("splitting --preset mn12 --out " + tmp_path("split.csv")) == 0,
              "splitting exits 0");
    {
        const std::string body = slurp(tmp_path("split.csv"));
        E2E_CHECK(body.find("delta_e_exact_J") != std::string::npos, "splitting columns");
        E2E_CHECK(body.find("delta_omega_inst_rad_s") != std::string::npos,
                  "instanton frequency column");
    }

    E2E_CHECK(run("splitting --preset spm --out " + tmp_path("split_spm.csv")) == 0,
              "spm splitting exits 0 (underflow path)");
    {
        const std::string body = slurp(tmp_path("split_spm.csv"));
        E2E_CHECK(body.find(",1,") != std::string::npos, "spm splitting flags below_resolution");
    }

    E2E_CHECK(run("tunnel-prob --preset mn12 --T 4 --t-max 1e-8 --steps 100 --out " +
                  tmp_path("prob.csv")) == 0,
              "tunnel-prob exits 0");

    // JSON emission
    E2E_CHECK(run("entropy-rate --preset mn12 --T 4 --m 10 --format json --out " +
                  tmp_path("rate.json")) == 0,
              "json format exits 0");
    {
        const std::string body = slurp(tmp_path("rate.json"));
        E2E_CHECK(body.find("\"rate_per_s\"") != std::string::npos, "json keys present");
    }

    // oracle subcommand
    E2E_CHECK(run("oracle --preset mn12 --s 1 --A 1e-24 --B 1e-26 --mode-freq 3.793e8 "
                  "--g 2.48e-27 --n-max 8 --t-max 1.5e-9 --steps 200 --m 1 "
                  "--fit-window 0.4 --out " +
                  tmp_path("oracle.csv")) == 0,
              "oracle exits 0");
    {
        const std::string body = slurp(tmp_path("oracle.csv"));
        E2E_CHECK(body.rfind("t_s,purity,p_minus_s,entropy\n", 0) == 0, "oracle columns");
    }

    // sweep determinism: identical invocations produce identical bytes
    const std::string sweep1 = tmp_path("sweep1.csv");
    const std::string sweep2 = tmp_path("sweep2.csv");
    const std::string sweep_args =
        "sweep --preset mn12 --var initial_m --outputs entropy_rate --T 2,4,8 --jobs 4 --out ";
    E2E_CHECK(run(sweep_args + sweep1) == 0, "sweep exits 0");
    E2E_CHECK(run(sweep_args + sweep2) == 0, "sweep re-run exits 0");
    {
        const std::string a = slurp(sweep1), b = slurp(sweep2);
        E2E_CHECK(!a.empty() && a == b, "sweep bytes identical on re-run");
        std::size_t rows = 0;
        for (char ch : a) rows += ch == '\n' ? 1 : 0;
        E2E_CHECK(rows == 64, "default m-sweep has 63 rows plus header");
    }

    // config-file preset
    const std::string cfg_path = tmp_path("custom.cfg");
    {
        std::ofstream cfg(cfg_path);
        cfg << "name = custom\ns = 6\nA_J = 1e-24\nB_J = 1e-27\nBint_J = 1e-24\n"
               "rho_kg_m3 = 2e3\nc_m_s = 2e3\n";
    }
    E2E_CHECK(run("entropy-rate --preset " + cfg_path + " --T 4 --m 6 --out " +
                  tmp_path("cfg_rate.csv")) == 0,
              "config-file preset exits 0");
    {
        const std::string body = slurp(tmp_path("cfg_rate.csv"));
        E2E_CHECK(body.find("\n6,4,") != std::string::npos, "config preset row present");
        E2E_CHECK(body.find("1.00000000000000e-24") != std::string::npos,
                  "config preset values flow through");
    }
    E2E_CHECK(run("entropy-rate --preset " + cfg_path + " --T 4 --m 99") == 2,
              "m out of range for config preset exits 2");

    // validation errors exit 2
    E2E_CHECK(run("entropy-rate --preset bogus --T 4 --m 10") == 2, "unknown preset exits 2");
    E2E_CHECK(run("entropy-rate --preset mn12 --T 4 --m 10.3") == 2, "non-half-integer m exits 2");
    E2E_CHECK(run("sweep --preset mn12 --outputs nothing") == 2, "unknown output exits 2");
    E2E_CHECK(run("sweep --preset mn12 --var B_over_A --grid 0:1:5:log --outputs delta_e_exact "
                  "--T 4") == 2,
              "log grid from 0 exits 2");
    E2E_CHECK(run("sweep --preset mn12 --var nope") == 2, "unknown variable exits 2");
    E2E_CHECK(run("sweep --preset mn12 --var time --grid 0:1:2x:linear --outputs p_minus_s "
                  "--T 4") == 2,
              "malformed grid count exits 2");
    E2E_CHECK(run("tunnel-prob --preset mn12 --T 4 --t-max 1e-8 --steps 0") == 2,
              "zero steps exits 2");
    E2E_CHECK(run("entropy-rate --preset mn12 --T 4") == 2, "missing required --m exits 2");
    E2E_CHECK(run("nonsense-subcommand") == 2, "unknown subcommand exits 2");

    // computation/runtime errors exit 3
    E2E_CHECK(run("entropy-rate --preset mn12 --T 4 --m 10 --out /nonexistent-dir/x.csv") == 3,
              "unwritable destination exits 3");

    // help exits 0
    E2E_CHECK(run("--help >/dev/null") == 0, "--help exits 0");

    if (failures == 0) {
        std::cout << "[PASS] cli_e2e: all checks passed\n";
        return 0;
    }
    std::cerr << "[FAIL] cli_e2e: " << failures << " check(s) failed\n";
    return 1;
}
