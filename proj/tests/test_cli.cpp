#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace {

const std::filesystem::path dir = std::filesystem::temp_directory_path() / "hyperfc-cli-test";

int run(const std::string& args) {
    std::filesystem::create_directories(dir);
    const std::string command =
        std::string(HYPERFC_CLI) + " " + args + " > " + (dir / "stdout.txt").string() + " 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("usage errors exit 2 with usage text") {
    CHECK(run("verify --suite foo") == 2);
    CHECK(read(dir / "stdout.txt").find("Usage") != std::string::npos);
    CHECK(run("verify --suite waves --model mehler") == 2);
    CHECK(run("verify --suite fracint --tol no.such.check=1") == 2);
    CHECK(run("verify --suite fracint --nodes 100") == 2);
    CHECK(run("curve growth --model sl2c") == 2);
}

TEST_CASE("verify writes a deterministic report and signals failing checks") {
    const auto a = dir / "a.json";
    const auto b = dir / "b.json";
    // The suite contains the printed derivative relations, which fail.
    CHECK(run("verify --suite fracint --seed 3 --out " + a.string()) == 1);
    CHECK(run("verify --suite fracint --seed 3 --out " + b.string()) == 1);
    const auto text = read(a);
    CHECK(text == read(b));
    CHECK(text.find("\"seed\": 3") != std::string::npos);
    CHECK(text.find("\"suite\": \"fracint\"") != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir / "a.json.tmp"));

    CHECK(run("verify --suite characters --model sl2c --out " + a.string()) == 0);
    CHECK(run("report " + a.string()) == 0);
    CHECK(read(dir / "stdout.txt").find("checks passed") != std::string::npos);
}

TEST_CASE("tolerance overrides re-evaluate checks") {
    const auto a = dir / "tol.json";
    CHECK(run("verify --suite fracint --tol fracint.derivative.nu1.printed=1 --tol fracint.derivative.nu2.printed=1 --out " +
              a.string()) == 0);
    CHECK(run("verify --suite characters --model cosh --tol 'characters.cosh.ode_vs_closed(lambda=1)=1e-30' --out " +
              a.string()) == 1);
    CHECK(run("report " + a.string()) == 1);
    CHECK(read(dir / "stdout.txt").find(">> characters.cosh.ode_vs_closed(lambda=1)") != std::string::npos);
}

TEST_CASE("report exit codes") {
    std::ofstream(dir / "empty.json") << R"({"checks": []})";
    CHECK(run("report " + (dir / "empty.json").string()) == 1);
    CHECK(read(dir / "stdout.txt").find("0 checks") != std::string::npos);
    std::ofstream(dir / "bad.json") << "{not json";
    CHECK(run("report " + (dir / "bad.json").string()) == 3);
    CHECK(run("report " + (dir / "missing.json").string()) == 3);
    CHECK(run("verify --suite fracint --out /nonexistent-dir/r.json") == 3);
}

TEST_CASE("curves are CSV with a header and 17 significant digits") {
    const auto csv = dir / "c.csv";
    CHECK(run("curve character --model sl2c --lambda 2 --out " + csv.string()) == 0);
    const auto text = read(csv);
    CHECK(text.starts_with("x,phi_ode,phi_closed\n"));
    CHECK(text.find("0.050000000000000003,") != std::string::npos);
    CHECK(run("curve transform --model mehler --f sech3 --out " + csv.string()) == 0);
    CHECK(read(csv).starts_with("lambda,fhat,8_lambda_cosech\n"));
    CHECK(run("curve variation --f cosech --s 2 --out " + csv.string()) == 0);
    CHECK(read(csv).starts_with("j,var_s\n-10,"));
    CHECK(run("curve wave --model cosh --t 2 --out /nonexistent-dir/w.csv") == 3);
}
