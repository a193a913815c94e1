#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "tat/config.hpp"
#include "tat/io.hpp"

using namespace tat;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(TATRECON_PATH) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WEXITSTATUS(st);
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

const char* kSmallConfig = R"(
# small end-to-end configuration
[phantom]
gaussian = 0.10 0.45 0.08 1.0

[grids]
n_time = 64
T = 2.0
tail_fraction = 0.125
m_detectors = 64
pad_factor = 4

[acquisition]
zero_arc_deg = 190 350
mask = hard
seed = 77

[recon]
mode = reduced
image_n = 64
)";

std::vector<char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::vector<char>(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("config parsing: defaults, values, unknown keys") {
    Config def = Config::parse("");
    CHECK(def.n_time == 256);
    CHECK(def.T == 2.0);
    CHECK(def.m_detectors == 1024);
    CHECK(def.acquisition.zero_arc_lo_deg == 190.0);
    CHECK(def.acquisition.zero_arc_hi_deg == 350.0);
    CHECK(def.acquisition.delta2 == doctest::Approx(std::tan(10.0 * kPi / 180.0)).epsilon(1e-12));
    CHECK(def.phantom.disks.size() == 3);  // shipped default phantom

    Config c = Config::parse(kSmallConfig);
    CHECK(c.n_time == 64);
    CHECK(c.m_detectors == 64);
    CHECK(c.phantom.bumps.size() == 1);
    CHECK(c.phantom.disks.empty());

    CHECK_THROWS_WITH_AS(Config::parse("[grids]\nbogus = 3\n"),
                         "config: unknown keys: grids.bogus", std::invalid_argument);
    CHECK_THROWS_AS(Config::parse("[recon]\nmode = sideways\n"), std::invalid_argument);
}

TEST_CASE("simulate and reconstruct end to end") {
    write_file("cli_small.cfg", kSmallConfig);

    CHECK(run("-c cli_small.cfg simulate -o cli_sino.tatd --reduced cli_red.tatd") == 0);
    CHECK(io::peek_record_type("cli_sino.tatd") == 1);

    CHECK(run("-c cli_small.cfg reconstruct -i cli_sino.tatd --mode full -o cli_dF.tatd "
              "--values cli_F.tatd --image cli_img.tatd") == 0);
    Image img = io::read_image("cli_img.tatd");
    CHECK(img.nx == 64);
    for (double v : img.values) CHECK(std::isfinite(v));

    // deterministic outputs on re-run
    std::vector<char> first = slurp("cli_img.tatd");
    CHECK(run("-c cli_small.cfg reconstruct -i cli_sino.tatd --mode full -o cli_dF.tatd "
              "--values cli_F.tatd --image cli_img.tatd") == 0);
    CHECK(slurp("cli_img.tatd") == first);

    // thread cap must not change bytes
    CHECK(run("-c cli_small.cfg --threads 3 reconstruct -i cli_sino.tatd --mode full "
              "-o cli_dF.tatd --values cli_F.tatd --image cli_img3.tatd") == 0);
    CHECK(slurp("cli_img3.tatd") == first);

    CHECK(run("-c cli_small.cfg reconstruct -i cli_sino.tatd --mode reduced -o cli_dG.tatd "
              "--truth-metrics --metrics-out cli_metrics.txt") == 0);
    std::ifstream m("cli_metrics.txt");
    std::string text((std::istreambuf_iterator<char>(m)), {});
    CHECK(text.find("rel_l2_unit_disk") != std::string::npos);

    for (const char* f : {"cli_small.cfg", "cli_sino.tatd", "cli_red.tatd", "cli_dF.tatd",
                          "cli_F.tatd", "cli_img.tatd", "cli_img3.tatd", "cli_dG.tatd",
                          "cli_metrics.txt"})
        std::remove(f);
}

TEST_CASE("radon and invert-radon round") {
    write_file("cli_small2.cfg", kSmallConfig);
    CHECK(run("-c cli_small2.cfg radon -o cli_radon.tatd --n-alpha 128 --n-p 257") == 0);
    CHECK(run("-c cli_small2.cfg invert-radon -i cli_radon.tatd -o cli_rimg.tatd --image-n 64") ==
          0);
    Image img = io::read_image("cli_rimg.tatd");
    double peak = 0.0;
    for (double v : img.values) peak = std::max(peak, v);
    CHECK(peak > 0.5);  // the unit-amplitude bump is visible
    for (const char* f : {"cli_small2.cfg", "cli_radon.tatd", "cli_rimg.tatd"}) std::remove(f);
}

TEST_CASE("missing input file exits with code 2 and writes nothing") {
    CHECK(run("reconstruct -i does_not_exist.tatd -o cli_nope.tatd") == 2);
    std::FILE* f = std::fopen("cli_nope.tatd", "rb");
    CHECK(f == nullptr);
}

TEST_CASE("noise level matches the requested relative L2") {
    write_file("cli_noise.cfg", kSmallConfig);
    CHECK(run("-c cli_noise.cfg simulate -o cli_clean.tatd") == 0);
    CHECK(run("-c cli_noise.cfg simulate -o cli_noisy.tatd --noise 0.01") == 0);
    Sinogram clean = io::read_sinogram("cli_clean.tatd");
    Sinogram noisy = io::read_sinogram("cli_noisy.tatd");
    double dn = 0.0, cn = 0.0;
    for (size_t i = 0; i < clean.values.size(); ++i) {
        const double d = noisy.values[i] - clean.values[i];
        dn += d * d;
        cn += clean.values[i] * clean.values[i];
    }
    const double level = std::sqrt(dn / cn);
    CHECK(level == doctest::Approx(0.01).epsilon(0.05));
    for (const char* f : {"cli_noise.cfg", "cli_clean.tatd", "cli_noisy.tatd"}) std::remove(f);
}

TEST_CASE("zero-amplitude phantom produces a zero sinogram file") {
    write_file("cli_zero.cfg",
               "[phantom]\ndisk = 0 0.5 0.2 0\n[grids]\nn_time = 16\nm_detectors = 16\n");
    CHECK(run("-c cli_zero.cfg simulate -o cli_zsino.tatd") == 0);
    Sinogram s = io::read_sinogram("cli_zsino.tatd");
    for (double v : s.values) CHECK(v == 0.0);
    for (const char* f : {"cli_zero.cfg", "cli_zsino.tatd"}) std::remove(f);
}
