#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <thetaglue/cli.hpp>

using thetaglue::cli::run;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("cli_test_") + name;
    std::ofstream file(path);
    file << content;
    return path;
}

}  // namespace

TEST_CASE("series: csv rows for E4") {
    const CliResult r = invoke({"series", "E4", "--order", "8", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "# series E4 order=8\n0,1\n2,240\n4,2160\n6,6720\n");
}

TEST_CASE("series: rho:0 is the constant 3") {
    const CliResult r = invoke({"series", "rho:0", "--order", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "# series rho:0 order=4\nq^0: 3\n");
}

TEST_CASE("series: name and order validation") {
    CHECK(invoke({"series", "nope"}).code == 2);
    CHECK(invoke({"series", "h:x"}).code == 2);
    CHECK(invoke({"series", "rho:-2"}).code == 2);
    CHECK(invoke({"series", "E4", "--order", "0"}).code == 3);
    CHECK(invoke({"series", "E4", "--order", "-3"}).code == 3);
    CHECK(invoke({"series", "rho:-1", "--order", "4"}).code == 0);
}

TEST_CASE("series: theta2 starts at a quarter power") {
    const CliResult r = invoke({"series", "theta2", "--order", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("q^1/4: 2\n") != std::string::npos);
}

TEST_CASE("identities: low order still passes") {
    const CliResult r = invoke({"identities", "--nmax", "3", "--order", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS theta2^4 + theta4^4 = theta3^4") != std::string::npos);
}

TEST_CASE("identities: nmax floor") {
    CHECK(invoke({"identities", "--nmax", "2"}).code == 3);
}

TEST_CASE("unknown verbs and bare calls are usage errors") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"--help"}).out.find("Usage") != std::string::npos);
}

TEST_CASE("lattice-theta: methods agree for a glued D8") {
    const std::string path = write_temp("d8.spec", "family=ODD_8M\nm=1\n");
    const CliResult r =
        invoke({"lattice-theta", "--spec", path, "--order", "6", "--methods", "all"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# method cosets\n") != std::string::npos);
    CHECK(r.out.find("# method theorem\n") != std::string::npos);
    CHECK(r.out.find("# method enum\n") != std::string::npos);
    CHECK(r.out.find("# agree cosets theorem\n") != std::string::npos);
    CHECK(r.out.find("# agree theorem enum\n") != std::string::npos);
    CHECK(r.out.find("q^2: 240") != std::string::npos);
    CHECK(r.out.find("DIFF") == std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("lattice-theta: spec and method validation") {
    CHECK(invoke({"lattice-theta", "--spec", "no_such_file.spec"}).code == 2);
    const std::string bad = write_temp("bad.spec", "family=ODD_8M\nm=1\nk=2\n");
    CHECK(invoke({"lattice-theta", "--spec", bad}).code == 2);
    std::remove(bad.c_str());
    const std::string good = write_temp("good.spec", "family=ODD_8M\nm=1\n");
    CHECK(invoke({"lattice-theta", "--spec", good, "--methods", "nope"}).code == 2);
    CHECK(invoke({"lattice-theta", "--spec", good, "--order", "0"}).code == 3);
    std::remove(good.c_str());
}

TEST_CASE("sym-expand: explicit slots") {
    const CliResult r = invoke({"sym-expand", "--k", "4", "--slots", "h:2:1,rho:1:-1,rho:1:-1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# summands 6") != std::string::npos);
    CHECK(r.out.find("h[m1+m2+1]*rho[m3-1]*rho[m4-1]\n") != std::string::npos);
    CHECK(r.out.find("h[m3+m4+1]*rho[m1-1]*rho[m2-1]\n") != std::string::npos);
}

TEST_CASE("sym-expand: mode and slot validation") {
    CHECK(invoke({"sym-expand"}).code == 2);
    CHECK(invoke({"sym-expand", "--k", "2", "--slots", "x:1"}).code == 2);
    CHECK(invoke({"sym-expand", "--k", "2", "--slots", "h:1:2:3:4"}).code == 2);
    CHECK(invoke({"sym-expand", "--k", "0", "--slots", "h:1"}).code == 3);
    CHECK(invoke({"sym-expand", "--k", "3", "--slots", "h:2"}).code == 3);
}

TEST_CASE("sym-expand: theorem patterns of a spec") {
    const std::string path = write_temp("even.spec", "family=EVEN_8M4\nm=1,1\n");
    const CliResult r = invoke({"sym-expand", "--spec", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("# scale 1/4") != std::string::npos);
    CHECK(r.out.find("h[m1+m2+1]\n") != std::string::npos);
    CHECK(r.out.find("rho[m1-1]*rho[m2-1]\n") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("audit: kinds and exit codes") {
    CHECK(invoke({"audit", "nope"}).code == 2);
    CHECK(invoke({"audit", "counts", "--lmax", "0"}).code == 3);
    const CliResult counts = invoke({"audit", "counts", "--lmax", "4"});
    CHECK(counts.code == 0);
    CHECK(counts.out.find("FAIL [asserted]") == std::string::npos);
    CHECK(counts.out.find("[informational]") != std::string::npos);
    const CliResult niemeier = invoke({"audit", "niemeier", "--order", "8"});
    CHECK(niemeier.code == 0);
    CHECK(niemeier.out.find("MISMATCH [asserted]") == std::string::npos);
    const CliResult spec = invoke({"audit", "specializations", "--order", "8", "--kmax", "4"});
    CHECK(spec.code == 0);
    CHECK(spec.out.find("MISMATCH [asserted]") == std::string::npos);
}

TEST_CASE("output is deterministic and --out redirects it") {
    const CliResult a = invoke({"series", "Delta24", "--order", "12", "--format", "qs"});
    const CliResult b = invoke({"series", "Delta24", "--order", "12", "--format", "qs"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const std::string path = "cli_test_redirect.txt";
    const CliResult c =
        invoke({"series", "Delta24", "--order", "12", "--format", "qs", "--out", path});
    CHECK(c.code == 0);
    CHECK(c.out.empty());
    std::ifstream file(path);
    std::stringstream content;
    content << file.rdbuf();
    CHECK(content.str() == a.out);
    std::remove(path.c_str());
}
