// End-to-end checks of the command-line surface. The binary path comes from
// the AFFSOL_BIN environment variable (set by ctest); the suite is skipped
// when it is absent.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

std::string binary() {
    const char* env = std::getenv("AFFSOL_BIN");
    return env ? env : "";
}

RunResult run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string tmp_path(const std::string& name) {
    return std::string("cli_tmp_") + name;
}

}  // namespace

TEST_CASE("command-line interface") {
    if (binary().empty()) {
        SKIP("AFFSOL_BIN not set");
    }

    SECTION("classify reports the worked cases with exit 0") {
        RunResult r = run("classify --b 0,0,0,0 --c 0,1");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("\"case\": \"1-a\"") != std::string::npos);

        RunResult r2 = run("classify --b 0,1,0,0 --c 1,0");
        CHECK(r2.exit_code == 0);
        CHECK(r2.output.find("\"case\": \"1-f\"") != std::string::npos);

        RunResult r3 = run("classify --b 1,0,0,1 --c 0,0");
        CHECK(r3.exit_code == 0);
        CHECK(r3.output.find("\"case\": \"2-d\"") != std::string::npos);
    }

    SECTION("boundary-ambiguous classification exits 2 with flags") {
        RunResult r = run("classify --b 5e-10,0,0,1 --c 0,0");
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("boundary_flags") != std::string::npos);
        CHECK(r.output.find("det-b-near-zero") != std::string::npos);
    }

    SECTION("parse errors exit 1") {
        CHECK(run("classify --b 1,2,3 --c 0,1").exit_code == 1);
        CHECK(run("classify --b 1,2,3,x --c 0,1").exit_code == 1);
        CHECK(run("frobnicate").exit_code == 1);
        CHECK(run("verify --curve does_not_exist.csv --b 0,0,0,0 --c 0,1").exit_code ==
              1);
        CHECK(run("synthesize --case 9-q --variant parabola --out x.csv").exit_code ==
              1);
    }

    SECTION("classify output is byte-deterministic") {
        RunResult a = run("classify --b 0,-1,1,0 --c 1,0");
        RunResult b = run("classify --b 0,-1,1,0 --c 1,0");
        CHECK(a.output == b.output);
    }

    SECTION("synthesize then verify round-trips at default tolerances") {
        const std::string csv = tmp_path("parabola.csv");
        RunResult s = run("synthesize --case 1-a --variant parabola --out " + csv);
        CHECK(s.exit_code == 0);
        RunResult v = run("verify --curve " + csv + " --b 0,0,0,0 --c 0,1");
        CHECK(v.exit_code == 0);
        CHECK(v.output.find("sup_norm") != std::string::npos);
        std::remove(csv.c_str());
    }

    SECTION("synthesize the periodic family prints the period") {
        const std::string csv = tmp_path("wave.csv");
        RunResult s = run("synthesize --case 1-d --variant periodic --c1 0.5 --out " + csv);
        CHECK(s.exit_code == 0);
        CHECK(s.output.find("\"period\": 7.41629870") != std::string::npos);
        RunResult v = run("verify --curve " + csv + " --b 0,0,0,-1 --c 0,0");
        CHECK(v.exit_code == 0);
        std::remove(csv.c_str());
    }

    SECTION("synthesize the scooper emits a seam marker") {
        const std::string csv = tmp_path("scooper.csv");
        RunResult s = run("synthesize --case 1-g --variant scooper --c1 1 --out " + csv);
        CHECK(s.exit_code == 0);
        CHECK(s.output.find("seam_index") != std::string::npos);
        std::remove(csv.c_str());
    }

    SECTION("verify rejects a non-soliton with exit 3") {
        const std::string csv = tmp_path("circle.csv");
        {
            std::ofstream os(csv);
            os << "u,x,y\n";
            for (int i = 0; i < 128; ++i) {
                const double t = 6.283185307179586 * i / 128;
                os << t << ',' << std::cos(t) << ',' << std::sin(t) << '\n';
            }
        }
        RunResult v = run("verify --curve " + csv + " --b 0,0,0,0 --c 0,1");
        CHECK(v.exit_code == 3);
        std::remove(csv.c_str());
    }

    SECTION("flow verification through the CLI") {
        const std::string csv = tmp_path("hyperbola.csv");
        RunResult s = run("synthesize --case 1-b --variant hyperbola+ --window 0.8:3 "
                          "--samples 512 --out " + csv);
        CHECK(s.exit_code == 0);
        RunResult v = run("verify --curve " + csv +
                          " --b 0,0,0,1 --c 0,0 --flow 0,0.5,2 --threshold 1e-5");
        CHECK(v.exit_code == 0);
        CHECK(v.output.find("argmax_t") != std::string::npos);
        std::remove(csv.c_str());
    }

    SECTION("evolve tabulates the action") {
        RunResult r = run("evolve --b 0,0,0,0 --c 0,1 --times 0,1,5");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("t,a11,a12,a21,a22,hx,hy") == 0);
        CHECK(r.output.find("5,1,0,0,1,0,5") != std::string::npos);
        // out-of-range time is an error
        CHECK(run("evolve --b -1,0,0,-1 --c 0,0 --times 0,1").exit_code == 1);
    }

    SECTION("portrait renders inward spirals and bare nullclines") {
        const std::string svg = tmp_path("portrait.svg");
        RunResult r = run("portrait --system 1e --circle 6,1 --span 30 --out " + svg);
        CHECK(r.exit_code == 0);
        std::ifstream is(svg);
        std::stringstream content;
        content << is.rdbuf();
        CHECK(content.str().find("<svg") == 0);
        CHECK(content.str().find("<path") != std::string::npos);
        std::remove(svg.c_str());

        const std::string svg2 = tmp_path("empty.svg");
        CHECK(run("portrait --system 1c --out " + svg2).exit_code == 0);
        std::remove(svg2.c_str());

        // seeds straddling the separatrix diverge into distinct classes
        const std::string svg3 = tmp_path("straddle.svg");
        const std::string csv3 = tmp_path("straddle.csv");
        RunResult r3 = run("portrait --system 1c --seeds \"0.1,0.002;0.1,0.02\" "
                           "--span 12 --out " + svg3 + " --csv " + csv3);
        CHECK(r3.exit_code == 0);
        std::ifstream cs(csv3);
        std::stringstream rows;
        rows << cs.rdbuf();
        CHECK(rows.str().find("x,u,v,event") == 0);
        std::remove(svg3.c_str());
        std::remove(csv3.c_str());
    }

    SECTION("synthesized CSV output is byte-deterministic") {
        const std::string a = tmp_path("det_a.csv"), b = tmp_path("det_b.csv");
        run("synthesize --case 1-g --variant scooper --c1 1 --out " + a);
        run("synthesize --case 1-g --variant scooper --c1 1 --out " + b);
        std::ifstream fa(a), fb(b);
        std::stringstream sa, sb;
        sa << fa.rdbuf();
        sb << fb.rdbuf();
        CHECK(sa.str() == sb.str());
        CHECK(!sa.str().empty());
        std::remove(a.c_str());
        std::remove(b.c_str());
    }
}
