#include "pqg/field_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pqg {

namespace {

constexpr char kMagic[4] = {'P', 'Q', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

// The format is defined little-endian; this code targets little-endian hosts
// (x86-64 / aarch64) and writes native byte order.
template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

std::string tmp_path_for(const std::string& path) {
    return path + ".tmp";
}

void commit(const std::string& tmp, const std::string& path) {
    std::filesystem::rename(tmp, path);
}

} // namespace

void write_field(const std::string& path, const ScalarField& f) {
    const std::string tmp = tmp_path_for(path);
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("write_field: cannot open " + tmp);
        os.write(kMagic, 4);
        put<std::uint32_t>(os, kVersion);
        const GridSpec& g = f.grid();
        put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n1));
        put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n2));
        put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n3));
        put<double>(os, g.L1);
        put<double>(os, g.L2);
        put<double>(os, g.L3);
        put<std::uint8_t>(os, f.mean_zero() ? 1 : 0);
        os.write(reinterpret_cast<const char*>(f.values().data()),
                 static_cast<std::streamsize>(f.size() * sizeof(double)));
        if (!os) throw Error("write_field: write failed for " + tmp);
    }
    commit(tmp, path);
}

ScalarField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("read_field: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw Error("read_field: bad magic in " + path);
    const auto version = get<std::uint32_t>(is);
    if (version != kVersion)
        throw Error("read_field: unsupported version in " + path);
    const int n1 = static_cast<int>(get<std::uint32_t>(is));
    const int n2 = static_cast<int>(get<std::uint32_t>(is));
    const int n3 = static_cast<int>(get<std::uint32_t>(is));
    const double L1 = get<double>(is);
    const double L2 = get<double>(is);
    const double L3 = get<double>(is);
    const auto flag = get<std::uint8_t>(is);
    GridSpec g(n1, n2, n3, L1, L2, L3);
    ScalarField f(g);
    is.read(reinterpret_cast<char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (!is) throw Error("read_field: truncated file " + path);
    f.set_mean_zero(flag != 0);
    return f;
}

void write_field_csv(const std::string& path, const ScalarField& f) {
    std::ostringstream os;
    os.precision(17);
    os << "x1,x2,x3,value\n";
    const GridSpec& g = f.grid();
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            for (int i3 = 0; i3 < g.n3; ++i3)
                os << g.x1(i1) << ',' << g.x2(i2) << ',' << g.x3(i3) << ','
                   << f(i1, i2, i3) << '\n';
    write_text_atomic(path, os.str());
}

ScalarField read_field_csv(const std::string& path, const GridSpec& grid) {
    std::ifstream is(path);
    if (!is) throw Error("read_field_csv: cannot open " + path);
    std::string line;
    std::getline(is, line); // header
    ScalarField f(grid);
    std::size_t count = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto last = line.rfind(',');
        if (last == std::string::npos)
            throw Error("read_field_csv: malformed row in " + path);
        if (count >= grid.size())
            throw Error("read_field_csv: more rows than grid points in " + path);
        f[count++] = std::stod(line.substr(last + 1));
    }
    if (count != grid.size())
        throw Error("read_field_csv: row count does not match grid in " + path);
    return f;
}

void write_profile_csv(const std::string& path,
                       const std::vector<double>& xs,
                       const std::vector<double>& ys,
                       const std::string& header) {
    if (xs.size() != ys.size())
        throw Error("write_profile_csv: column length mismatch");
    std::ostringstream os;
    os.precision(17);
    os << header << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i)
        os << xs[i] << ',' << ys[i] << '\n';
    write_text_atomic(path, os.str());
}

void read_profile_csv(const std::string& path,
                      std::vector<double>& xs,
                      std::vector<double>& ys) {
    std::ifstream is(path);
    if (!is) throw Error("read_profile_csv: cannot open " + path);
    xs.clear();
    ys.clear();
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error("read_profile_csv: malformed row in " + path);
        if (first) {
            first = false;
            // tolerate a header line
            try {
                std::stod(line.substr(0, comma));
            } catch (const std::exception&) {
                continue;
            }
        }
        xs.push_back(std::stod(line.substr(0, comma)));
        ys.push_back(std::stod(line.substr(comma + 1)));
    }
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = tmp_path_for(path);
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("write_text_atomic: cannot open " + tmp);
        os << content;
        if (!os) throw Error("write_text_atomic: write failed for " + tmp);
    }
    commit(tmp, path);
}

} // namespace pqg
