#include "swlift/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace swlift::io {

namespace {

constexpr char magic[12] = {'S', 'W', 'L', 'I', 'F', 'T', '-', 'F', 'I', 'E', 'L', 'D'};
constexpr std::uint32_t format_version = 1;

enum : std::uint8_t {
    kind_spinor_plus = 0x01,
    kind_spinor_minus = 0x02,
    kind_spinor_full = 0x03,
    kind_two_form = 0x04,
    kind_gauge = 0x05,
    sector_bit = 0x10,
};

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4] = {char(v & 0xff), char(v >> 8 & 0xff), char(v >> 16 & 0xff), char(v >> 24 & 0xff)};
    os.write(b, 4);
}

void put_f64(std::ostream& os, double d) {
    auto v = std::bit_cast<std::uint64_t>(d);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char(v >> (8 * i) & 0xff);
    os.write(b, 8);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("field dump truncated");
    return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
           std::uint32_t(b[3]) << 24;
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("field dump truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

std::uint8_t spinor_kind(Chirality c) {
    switch (c) {
        case Chirality::plus: return kind_spinor_plus;
        case Chirality::minus: return kind_spinor_minus;
        default: return kind_spinor_full;
    }
}

Chirality spinor_chirality(std::uint8_t kind) {
    switch (kind) {
        case kind_spinor_plus: return Chirality::plus;
        case kind_spinor_minus: return Chirality::minus;
        case kind_spinor_full: return Chirality::full;
        default: throw std::runtime_error("field dump: unknown spinor kind");
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

void write_header(std::ostream& os, const Grid4& g, std::uint8_t kind) {
    os.write(magic, sizeof magic);
    put_u32(os, format_version);
    for (int i = 0; i < 4; ++i) put_u32(os, std::uint32_t(g.n));
    os.put(char(kind));
}

struct Header {
    Grid4 grid;
    std::uint8_t kind;
};

std::pair<std::ifstream, Header> open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    char got[sizeof magic];
    if (!is.read(got, sizeof magic) || std::memcmp(got, magic, sizeof magic) != 0)
        throw std::runtime_error("field dump: bad magic");
    if (get_u32(is) != format_version) throw std::runtime_error("field dump: unknown version");
    std::uint32_t dims[4];
    for (auto& d : dims) d = get_u32(is);
    if (dims[0] != dims[1] || dims[0] != dims[2] || dims[0] != dims[3])
        throw std::runtime_error("field dump: non-cubic dims");
    Header h{Grid4(int(dims[0])), 0};
    int kind = is.get();
    if (kind < 0) throw std::runtime_error("field dump truncated");
    h.kind = std::uint8_t(kind);
    return {std::move(is), h};
}

void write_complex_payload(std::ostream& os, const cvector& v) {
    for (const auto& z : v) {
        put_f64(os, z.real());
        put_f64(os, z.imag());
    }
}

void read_complex_payload(std::istream& is, cvector& v) {
    for (auto& z : v) {
        double re = get_f64(is), im = get_f64(is);
        z = {re, im};
    }
}

void expect_eof(std::istream& is, const char* what) {
    if (is.peek() != std::char_traits<char>::eof())
        throw std::runtime_error(std::string("field dump: trailing bytes in ") + what);
}

}

void write_spinor(const std::string& path, const SpinorField& f) {
    auto os = open_out(path);
    write_header(os, f.grid, spinor_kind(f.chirality));
    write_complex_payload(os, f.v);
    if (!os) throw std::runtime_error("write failed: " + path);
}

SpinorField read_spinor(const std::string& path) {
    auto [is, h] = open_in(path);
    SpinorField f(h.grid, spinor_chirality(h.kind));
    read_complex_payload(is, f.v);
    expect_eof(is, "spinor");
    return f;
}

void write_two_form(const std::string& path, const TwoFormField& f) {
    auto os = open_out(path);
    write_header(os, f.grid, kind_two_form);
    write_complex_payload(os, f.v);
    if (!os) throw std::runtime_error("write failed: " + path);
}

TwoFormField read_two_form(const std::string& path) {
    auto [is, h] = open_in(path);
    if (h.kind != kind_two_form) throw std::runtime_error("field dump: not a two-form");
    TwoFormField f(h.grid);
    read_complex_payload(is, f.v);
    expect_eof(is, "two-form");
    return f;
}

void write_gauge(const std::string& path, const GaugeField& f) {
    auto os = open_out(path);
    write_header(os, f.grid, kind_gauge);
    for (double h : f.holonomy) put_f64(os, h);
    for (std::int64_t s = 0; s < f.grid.volume(); ++s)
        for (int m = 0; m < 4; ++m) put_f64(os, f.a[m][s]);
    if (!os) throw std::runtime_error("write failed: " + path);
}

GaugeField read_gauge(const std::string& path) {
    auto [is, h] = open_in(path);
    if (h.kind != kind_gauge) throw std::runtime_error("field dump: not a gauge field");
    GaugeField f(h.grid);
    for (auto& hol : f.holonomy) hol = get_f64(is);
    for (std::int64_t s = 0; s < f.grid.volume(); ++s)
        for (int m = 0; m < 4; ++m) f.a[m][s] = get_f64(is);
    expect_eof(is, "gauge field");
    return f;
}

void write_sector_spinor(const std::string& path, const SpinorField& f, Charge q) {
    auto os = open_out(path);
    write_header(os, f.grid, std::uint8_t(spinor_kind(f.chirality) | sector_bit));
    put_u32(os, std::uint32_t(std::int32_t(q.doubled)));
    write_complex_payload(os, f.v);
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::pair<SpinorField, Charge> read_sector_spinor(const std::string& path) {
    auto [is, h] = open_in(path);
    if (!(h.kind & sector_bit)) throw std::runtime_error("field dump: not a sector spinor");
    Charge q{int(std::int32_t(get_u32(is)))};
    SpinorField f(h.grid, spinor_chirality(std::uint8_t(h.kind & ~sector_bit)));
    read_complex_payload(is, f.v);
    expect_eof(is, "sector spinor");
    return {std::move(f), q};
}

}
