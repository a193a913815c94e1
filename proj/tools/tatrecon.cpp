#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "tat/config.hpp"
#include "tat/io.hpp"
#include "tat/metrics.hpp"
#include "tat/radon.hpp"
#include "tat/recon.hpp"
#include "tat/specfun.hpp"

namespace {

using namespace tat;

void check_finite(const std::vector<double>& v, const std::string& what) {
    for (double x : v)
        if (!std::isfinite(x)) throw NumericalError(what + " contains a non-finite value");
}

void add_noise(Sinogram& s, double level, uint64_t seed) {
    if (level <= 0.0) return;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> xi(s.values.size());
    double norm_g = 0.0, norm_xi = 0.0;
    for (size_t i = 0; i < xi.size(); ++i) {
        xi[i] = gauss(rng);
        norm_g += s.values[i] * s.values[i];
        norm_xi += xi[i] * xi[i];
    }
    if (norm_g == 0.0 || norm_xi == 0.0) return;
    const double scale = level * std::sqrt(norm_g / norm_xi);
    for (size_t i = 0; i < xi.size(); ++i) s.values[i] += scale * xi[i];
}

ReconMode parse_mode(const std::string& m) {
    if (m == "full") return ReconMode::full;
    if (m == "reduced") return ReconMode::reduced;
    if (m == "naive") return ReconMode::naive;
    throw std::invalid_argument("mode must be full, reduced or naive");
}

FilterSpec filter_from_config(const Config& cfg, RadonKind kind) {
    FilterSpec spec = FilterSpec::for_kind(kind);
    spec.pad_factor = cfg.filter_pad;
    spec.upsample = cfg.filter_upsample;
    spec.rolloff_fraction = cfg.apodize;
    return spec;
}

void write_metrics(const std::string& path, const std::string& kv, const std::string& csv) {
    if (path.empty()) {
        std::cout << kv;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open metrics file: " + path);
    out << kv << csv << "\n";
}

int cmd_simulate(const Config& cfg, const std::string& out_path, const std::string& reduced_path,
                 double noise_override, int threads, bool csv) {
    Config c = cfg;
    if (noise_override >= 0.0) c.noise = noise_override;
    TimeGrid gt = c.time_grid();
    AngularGrid gth = c.angular_grid();
    ForwardOptions fopt;
    fopt.threads = threads;
    Sinogram s = simulate_boundary_data(c.phantom, gt, gth, fopt);
    s.geometry.delta2 = c.acquisition.delta2;
    add_noise(s, c.noise, c.seed);
    check_finite(s.values, "sinogram");
    io::write_sinogram(out_path, s);
    if (csv) io::write_csv(out_path + ".csv", s);
    if (!reduced_path.empty()) {
        Sinogram red = apply_reduction(s, c.acquisition);
        io::write_sinogram(reduced_path, red);
        if (csv) io::write_csv(reduced_path + ".csv", red);
    }
    return 0;
}

int cmd_reconstruct(const Config& cfg, const std::string& in_path, const std::string& mode_str,
                    const std::string& out_path, const std::string& values_path,
                    const std::string& image_path, bool truth_metrics,
                    const std::string& metrics_path, int threads) {
    Sinogram s = io::read_sinogram(in_path);
    if (s.grid_theta.m_detectors != cfg.m_detectors)
        throw std::invalid_argument("reconstruct: detector count differs from config (stage: input)");
    if (std::abs(s.grid_t.dt * cfg.n_time - cfg.T) > 1e-9)
        throw std::invalid_argument("reconstruct: time grid differs from config (stage: input)");
    s.grid_t.n_samples = cfg.n_time;
    s.grid_t.n_padded = next_pow2(cfg.pad_factor * s.grid_t.n_extended);

    PipelineOptions popt;
    popt.T = cfg.T;
    popt.tail_fraction = cfg.tail_fraction;
    popt.n_alpha = cfg.n_alpha;
    popt.threads = threads;
    const ReconMode mode = parse_mode(mode_str.empty() ? cfg.mode : mode_str);

    RadonData deriv = run_pipeline(s, cfg.acquisition, mode, popt);
    check_finite(deriv.values, "projection derivatives (stage: spectral)");
    io::write_radon(out_path, deriv);

    RadonData values = antidifferentiate(deriv);
    check_finite(values.values, "projections (stage: antidifferentiation)");
    if (!values_path.empty()) io::write_radon(values_path, values);

    Image img;
    if (!image_path.empty() || truth_metrics) {
        img = invert(deriv, cfg.image_n, filter_from_config(cfg, deriv.kind), threads);
        check_finite(img.values, "image (stage: inversion)");
        if (!image_path.empty()) io::write_image(image_path, img);
    }

    if (truth_metrics) {
        Image truth = render(cfg.phantom, cfg.image_n);
        std::ostringstream kv, csv;
        kv.precision(12);
        csv.precision(12);
        const double l2 = rel_error(img, truth, Norm::L2, Region::unit_disk);
        const double li = rel_error(img, truth, Norm::Linf, Region::unit_disk);
        const double l2u = rel_error(img, truth, Norm::L2, Region::upper_half);
        const double liu = rel_error(img, truth, Norm::Linf, Region::upper_half);
        ConsistencyReport rep = projection_consistency(values);
        kv << "rel_l2_unit_disk = " << l2 << "\n"
           << "rel_linf_unit_disk = " << li << "\n"
           << "rel_l2_upper_half = " << l2u << "\n"
           << "rel_linf_upper_half = " << liu << "\n"
           << rep.to_kv();
        csv << l2 << "," << li << "," << l2u << "," << liu << "," << rep.to_csv_row();
        write_metrics(metrics_path, kv.str(), csv.str());
    }
    return 0;
}

int cmd_radon(const Config& cfg, const std::string& out_path, int n_alpha, int n_p,
              const std::string& kind_str) {
    RadonGrid grid = RadonGrid::unit(n_alpha, n_p);
    const RadonKind kind = (kind_str == "dF") ? RadonKind::dF_dp : RadonKind::F;
    RadonData d = sample_radon(cfg.phantom, grid, kind);
    check_finite(d.values, "projections");
    io::write_radon(out_path, d);
    return 0;
}

int cmd_invert_radon(const Config& cfg, const std::string& in_path, const std::string& out_path,
                     int image_n, int threads) {
    RadonData d = io::read_radon(in_path);
    Image img = invert(d, image_n > 0 ? image_n : cfg.image_n,
                       filter_from_config(cfg, d.kind), threads);
    check_finite(img.values, "image (stage: inversion)");
    io::write_image(out_path, img);
    return 0;
}

int cmd_tables(double lambda, int k_max, const std::string& out_path) {
    const auto t = specfun::bessel_jy(k_max, lambda);
    std::ofstream out(out_path + ".tmp", std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open: " + out_path);
    out.write("TATH0001", 8);
    const auto n = static_cast<uint32_t>(k_max + 1);
    out.write(reinterpret_cast<const char*>(&n), 4);
    out.write(reinterpret_cast<const char*>(&t.lambda), 8);
    out.write(reinterpret_cast<const char*>(t.j.data()), 8 * n);
    out.write(reinterpret_cast<const char*>(t.y.data()), 8 * n);
    out.write(reinterpret_cast<const char*>(t.ok.data()), n);
    out.close();
    if (std::rename((out_path + ".tmp").c_str(), out_path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermoacoustic tomography reconstruction toolkit"};
    app.require_subcommand(1);

    std::string config_path, phantom_path;
    int threads = 1;
    app.add_option("-c,--config", config_path, "configuration file");
    app.add_option("--phantom", phantom_path, "separate phantom description file");
    app.add_option("--threads", threads, "worker thread cap")->check(CLI::PositiveNumber);

    auto* sim = app.add_subcommand("simulate", "simulate boundary pressure data");
    std::string sim_out = "sinogram.tatd", sim_reduced;
    double sim_noise = -1.0;
    bool sim_csv = false;
    sim->add_option("-o,--output", sim_out, "full sinogram output");
    sim->add_option("--reduced", sim_reduced, "also write the reduced sinogram");
    sim->add_option("--noise", sim_noise, "additive white noise, relative L2 level");
    sim->add_flag("--csv", sim_csv, "also write CSV mirrors");

    auto* rec = app.add_subcommand("reconstruct", "projections and image from a sinogram");
    std::string rec_in, rec_mode, rec_out = "projections.tatd", rec_values, rec_image,
                rec_metrics;
    bool rec_truth = false;
    rec->add_option("-i,--input", rec_in, "sinogram file")->required();
    rec->add_option("--mode", rec_mode, "full | reduced | naive");
    rec->add_option("-o,--output", rec_out, "projection-derivative output");
    rec->add_option("--values", rec_values, "anti-differentiated projections output");
    rec->add_option("--image", rec_image, "reconstructed image output");
    rec->add_flag("--truth-metrics", rec_truth, "compare against the config phantom");
    rec->add_option("--metrics-out", rec_metrics, "metrics file (default: stdout)");

    auto* rad = app.add_subcommand("radon", "exact projections of the config phantom");
    std::string rad_out = "radon.tatd", rad_kind = "F";
    int rad_n_alpha = 1024, rad_n_p = 1025;
    rad->add_option("-o,--output", rad_out, "output file");
    rad->add_option("--n-alpha", rad_n_alpha, "projection directions");
    rad->add_option("--n-p", rad_n_p, "offset samples (odd)");
    rad->add_option("--kind", rad_kind, "F | dF");

    auto* inv = app.add_subcommand("invert-radon", "filtered backprojection of a projections file");
    std::string inv_in, inv_out = "image.tatd";
    int inv_image_n = 0;
    inv->add_option("-i,--input", inv_in, "projections file")->required();
    inv->add_option("-o,--output", inv_out, "image output");
    inv->add_option("--image-n", inv_image_n, "image grid size");

    auto* tab = app.add_subcommand("tables", "dump a Hankel table for reuse");
    double tab_lambda = 1.0;
    int tab_kmax = 512;
    std::string tab_out = "hankel.tath";
    tab->add_option("--lambda", tab_lambda, "argument")->required();
    tab->add_option("--k-max", tab_kmax, "largest order");
    tab->add_option("-o,--output", tab_out, "output file");

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg;
        if (!config_path.empty())
            cfg = Config::load(config_path);
        else
            cfg.phantom = default_phantom();
        if (!phantom_path.empty()) {
            Config pcfg = Config::load(phantom_path);
            cfg.phantom = pcfg.phantom;
        }

        if (sim->parsed())
            return cmd_simulate(cfg, sim_out, sim_reduced, sim_noise, threads, sim_csv);
        if (rec->parsed())
            return cmd_reconstruct(cfg, rec_in, rec_mode, rec_out, rec_values, rec_image,
                                   rec_truth, rec_metrics, threads);
        if (rad->parsed()) return cmd_radon(cfg, rad_out, rad_n_alpha, rad_n_p, rad_kind);
        if (inv->parsed()) return cmd_invert_radon(cfg, inv_in, inv_out, inv_image_n, threads);
        if (tab->parsed()) return cmd_tables(tab_lambda, tab_kmax, tab_out);
    } catch (const tat::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
