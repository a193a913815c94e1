#include "tat/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace tat::io {

namespace {

constexpr char kMagic[8] = {'T', 'A', 'T', 'D', '0', '0', '0', '1'};

constexpr uint32_t kRecSinogram = 1;
constexpr uint32_t kRecImage = 2;

struct Header {
    uint32_t record_type = 0;
    uint32_t dims[2] = {0, 0};
    double axis0_origin = 0.0, axis0_spacing = 0.0;
    double axis1_origin = 0.0, axis1_spacing = 0.0;
};

class AtomicWriter {
  public:
    explicit AtomicWriter(const std::string& path)
        : path_(path), tmp_(path + ".tmp"), out_(tmp_, std::ios::binary | std::ios::trunc) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + tmp_);
    }
    ~AtomicWriter() {
        if (!committed_) {
            out_.close();
            std::remove(tmp_.c_str());
        }
    }
    std::ostream& stream() { return out_; }
    void commit() {
        out_.flush();
        if (!out_) throw std::runtime_error("write failed: " + tmp_);
        out_.close();
        if (std::rename(tmp_.c_str(), path_.c_str()) != 0)
            throw std::runtime_error("rename failed: " + path_);
        committed_ = true;
    }

  private:
    std::string path_, tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

void put_header(std::ostream& os, const Header& h) {
    os.write(kMagic, 8);
    os.write(reinterpret_cast<const char*>(&h.record_type), 4);
    os.write(reinterpret_cast<const char*>(h.dims), 8);
    os.write(reinterpret_cast<const char*>(&h.axis0_origin), 8);
    os.write(reinterpret_cast<const char*>(&h.axis0_spacing), 8);
    os.write(reinterpret_cast<const char*>(&h.axis1_origin), 8);
    os.write(reinterpret_cast<const char*>(&h.axis1_spacing), 8);
}

Header get_header(std::istream& is, const std::string& path) {
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0)
        throw std::runtime_error("not a TATD0001 file: " + path);
    Header h;
    is.read(reinterpret_cast<char*>(&h.record_type), 4);
    is.read(reinterpret_cast<char*>(h.dims), 8);
    is.read(reinterpret_cast<char*>(&h.axis0_origin), 8);
    is.read(reinterpret_cast<char*>(&h.axis0_spacing), 8);
    is.read(reinterpret_cast<char*>(&h.axis1_origin), 8);
    is.read(reinterpret_cast<char*>(&h.axis1_spacing), 8);
    if (!is) throw std::runtime_error("truncated header: " + path);
    return h;
}

void put_payload(std::ostream& os, const std::vector<double>& v) {
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void get_payload(std::istream& is, std::vector<double>& v, const std::string& path) {
    is.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated payload: " + path);
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return in;
}

}  // namespace

void write_sinogram(const std::string& path, const Sinogram& s) {
    Header h;
    h.record_type = kRecSinogram;
    h.dims[0] = static_cast<uint32_t>(s.grid_theta.m_detectors);
    h.dims[1] = static_cast<uint32_t>(s.grid_t.n_extended);
    h.axis0_origin = 0.0;
    h.axis0_spacing = 2.0 * kPi / s.grid_theta.m_detectors;
    h.axis1_origin = s.grid_t.t0;
    h.axis1_spacing = s.grid_t.dt;
    AtomicWriter w(path);
    put_header(w.stream(), h);
    put_payload(w.stream(), s.values);
    w.commit();
}

void write_radon(const std::string& path, const RadonData& d) {
    Header h;
    h.record_type = static_cast<uint32_t>(d.kind);
    h.dims[0] = static_cast<uint32_t>(d.grid.n_alpha);
    h.dims[1] = static_cast<uint32_t>(d.grid.n_p);
    h.axis0_origin = 0.0;
    h.axis0_spacing = 2.0 * kPi / d.grid.n_alpha;
    h.axis1_origin = d.grid.p0;
    h.axis1_spacing = d.grid.dp;
    AtomicWriter w(path);
    put_header(w.stream(), h);
    put_payload(w.stream(), d.values);
    w.commit();
}

void write_image(const std::string& path, const Image& img) {
    Header h;
    h.record_type = kRecImage;
    h.dims[0] = static_cast<uint32_t>(img.ny);
    h.dims[1] = static_cast<uint32_t>(img.nx);
    h.axis0_origin = -1.0 + 1.0 / img.ny;
    h.axis0_spacing = 2.0 / img.ny;
    h.axis1_origin = -1.0 + 1.0 / img.nx;
    h.axis1_spacing = 2.0 / img.nx;
    AtomicWriter w(path);
    put_header(w.stream(), h);
    put_payload(w.stream(), img.values);
    w.commit();
}

Sinogram read_sinogram(const std::string& path) {
    auto in = open_in(path);
    Header h = get_header(in, path);
    if (h.record_type != kRecSinogram)
        throw std::runtime_error("not a sinogram record: " + path);
    TimeGrid t;
    t.dt = h.axis1_spacing;
    t.t0 = h.axis1_origin;
    t.n_extended = static_cast<int>(h.dims[1]);
    t.n_samples = t.n_extended;  // refined by the caller from its config
    t.n_padded = next_pow2(t.n_extended);
    Sinogram s(t, AngularGrid(static_cast<int>(h.dims[0])));
    s.tail_filled = true;
    get_payload(in, s.values, path);
    return s;
}

RadonData read_radon(const std::string& path) {
    auto in = open_in(path);
    Header h = get_header(in, path);
    if (h.record_type < 10 || h.record_type > 16)
        throw std::runtime_error("not a radon record: " + path);
    RadonGrid g;
    g.n_alpha = static_cast<int>(h.dims[0]);
    g.n_p = static_cast<int>(h.dims[1]);
    g.p0 = h.axis1_origin;
    g.dp = h.axis1_spacing;
    RadonData d(g, static_cast<RadonKind>(h.record_type));
    get_payload(in, d.values, path);
    return d;
}

Image read_image(const std::string& path) {
    auto in = open_in(path);
    Header h = get_header(in, path);
    if (h.record_type != kRecImage)
        throw std::runtime_error("not an image record: " + path);
    Image img(static_cast<int>(h.dims[1]), static_cast<int>(h.dims[0]));
    get_payload(in, img.values, path);
    return img;
}

uint32_t peek_record_type(const std::string& path) {
    auto in = open_in(path);
    return get_header(in, path).record_type;
}

namespace {

void csv_body(std::ostream& os, const Header& h, const std::vector<double>& v) {
    os << "record_type=" << h.record_type << ",dims=" << h.dims[0] << "x" << h.dims[1]
       << ",axis0_origin=" << h.axis0_origin << ",axis0_spacing=" << h.axis0_spacing
       << ",axis1_origin=" << h.axis1_origin << ",axis1_spacing=" << h.axis1_spacing << "\n";
    os.precision(17);
    for (uint32_t r = 0; r < h.dims[0]; ++r) {
        for (uint32_t c = 0; c < h.dims[1]; ++c) {
            if (c) os << ',';
            os << v[static_cast<size_t>(r) * h.dims[1] + c];
        }
        os << '\n';
    }
}

template <typename Fill>
void write_csv_impl(const std::string& path, const Fill& fill) {
    AtomicWriter w(path);
    fill(w.stream());
    w.commit();
}

}  // namespace

void write_csv(const std::string& path, const Sinogram& s) {
    Header h;
    h.record_type = kRecSinogram;
    h.dims[0] = static_cast<uint32_t>(s.grid_theta.m_detectors);
    h.dims[1] = static_cast<uint32_t>(s.grid_t.n_extended);
    h.axis0_spacing = 2.0 * kPi / s.grid_theta.m_detectors;
    h.axis1_origin = s.grid_t.t0;
    h.axis1_spacing = s.grid_t.dt;
    write_csv_impl(path, [&](std::ostream& os) { csv_body(os, h, s.values); });
}

void write_csv(const std::string& path, const RadonData& d) {
    Header h;
    h.record_type = static_cast<uint32_t>(d.kind);
    h.dims[0] = static_cast<uint32_t>(d.grid.n_alpha);
    h.dims[1] = static_cast<uint32_t>(d.grid.n_p);
    h.axis0_spacing = 2.0 * kPi / d.grid.n_alpha;
    h.axis1_origin = d.grid.p0;
    h.axis1_spacing = d.grid.dp;
    write_csv_impl(path, [&](std::ostream& os) { csv_body(os, h, d.values); });
}

void write_csv(const std::string& path, const Image& img) {
    Header h;
    h.record_type = kRecImage;
    h.dims[0] = static_cast<uint32_t>(img.ny);
    h.dims[1] = static_cast<uint32_t>(img.nx);
    h.axis0_origin = -1.0 + 1.0 / img.ny;
    h.axis0_spacing = 2.0 / img.ny;
    h.axis1_origin = -1.0 + 1.0 / img.nx;
    h.axis1_spacing = 2.0 / img.nx;
    write_csv_impl(path, [&](std::ostream& os) { csv_body(os, h, img.values); });
}

void write_pgm16(const std::string& path, const Image& img, double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("write_pgm16: need hi > lo");
    {
        AtomicWriter w(path);
        auto& os = w.stream();
        os << "P5\n" << img.nx << " " << img.ny << "\n65535\n";
        double scale = 65535.0 / (hi - lo);
        std::vector<unsigned char> row(static_cast<size_t>(img.nx) * 2);
        for (int j = 0; j < img.ny; ++j) {
            for (int i = 0; i < img.nx; ++i) {
                double v = (img.at(j, i) - lo) * scale;
                if (v < 0.0) v = 0.0;
                if (v > 65535.0) v = 65535.0;
                auto u = static_cast<uint16_t>(v + 0.5);
                row[2 * i] = static_cast<unsigned char>(u >> 8);
                row[2 * i + 1] = static_cast<unsigned char>(u & 0xff);
            }
            os.write(reinterpret_cast<const char*>(row.data()),
                     static_cast<std::streamsize>(row.size()));
        }
        w.commit();
    }
    AtomicWriter side(path + ".range.txt");
    side.stream().precision(17);
    side.stream() << "min = " << lo << "\nmax = " << hi << "\n";
    side.commit();
}

void write_pgm16(const std::string& path, const Image& img) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : img.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) hi = lo + 1.0;
    write_pgm16(path, img, lo, hi);
}

}  // namespace tat::io
