#include "tat/config.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace tat {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_numbers(const std::string& v, size_t expect, const std::string& key) {
    std::istringstream is(v);
    std::vector<double> out;
    double x;
    while (is >> x) out.push_back(x);
    if (out.size() != expect)
        throw std::invalid_argument("config: key '" + key + "' expects " +
                                    std::to_string(expect) + " numbers");
    return out;
}

double parse_double(const std::string& v, const std::string& key) {
    return parse_numbers(v, 1, key)[0];
}

int parse_int(const std::string& v, const std::string& key) {
    double d = parse_double(v, key);
    auto i = static_cast<long long>(d);
    if (static_cast<double>(i) != d)
        throw std::invalid_argument("config: key '" + key + "' expects an integer");
    return static_cast<int>(i);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    cfg.phantom = Phantom{};  // phantom comes solely from the file
    std::vector<std::string> unknown;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool phantom_given = false;

    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section at line " +
                                            std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (section == "phantom") {
            if (key == "disk") {
                auto v = parse_numbers(value, 4, qual);
                cfg.phantom.disks.push_back({v[0], v[1], v[2], v[3]});
                phantom_given = true;
            } else if (key == "gaussian") {
                auto v = parse_numbers(value, 4, qual);
                cfg.phantom.bumps.push_back({v[0], v[1], v[2], v[3]});
                phantom_given = true;
            } else {
                unknown.push_back(qual);
            }
        } else if (section == "grids") {
            if (key == "n_time") cfg.n_time = parse_int(value, qual);
            else if (key == "T") cfg.T = parse_double(value, qual);
            else if (key == "tail_fraction") cfg.tail_fraction = parse_double(value, qual);
            else if (key == "m_detectors") cfg.m_detectors = parse_int(value, qual);
            else if (key == "pad_factor") cfg.pad_factor = parse_int(value, qual);
            else unknown.push_back(qual);
        } else if (section == "acquisition") {
            if (key == "delta2") cfg.acquisition.delta2 = parse_double(value, qual);
            else if (key == "zero_arc_deg") {
                auto v = parse_numbers(value, 2, qual);
                cfg.acquisition.zero_arc_lo_deg = v[0];
                cfg.acquisition.zero_arc_hi_deg = v[1];
            } else if (key == "mask") {
                if (value == "hard") cfg.acquisition.mask = AcquisitionConfig::Mask::hard;
                else if (value == "smooth") cfg.acquisition.mask = AcquisitionConfig::Mask::smooth;
                else throw std::invalid_argument("config: mask must be hard or smooth");
            } else if (key == "smooth_width_deg")
                cfg.acquisition.smooth_width_deg = parse_double(value, qual);
            else if (key == "noise") cfg.noise = parse_double(value, qual);
            else if (key == "seed") cfg.seed = static_cast<uint64_t>(parse_double(value, qual));
            else unknown.push_back(qual);
        } else if (section == "recon") {
            if (key == "mode") {
                if (value != "full" && value != "reduced" && value != "naive")
                    throw std::invalid_argument("config: mode must be full, reduced or naive");
                cfg.mode = value;
            } else if (key == "n_alpha") cfg.n_alpha = parse_int(value, qual);
            else if (key == "image_n") cfg.image_n = parse_int(value, qual);
            else if (key == "apodize") cfg.apodize = parse_double(value, qual);
            else if (key == "upsample") cfg.filter_upsample = parse_int(value, qual);
            else if (key == "pad_factor") cfg.filter_pad = parse_int(value, qual);
            else unknown.push_back(qual);
        } else {
            unknown.push_back(qual.empty() || section.empty() ? key : qual);
        }
    }

    if (!unknown.empty()) {
        std::string msg = "config: unknown keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw std::invalid_argument(msg);
    }
    if (!phantom_given) cfg.phantom = default_phantom();
    cfg.phantom.validate();
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace tat
