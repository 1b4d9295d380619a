#include "sparsepr/io.hpp"

#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace sparsepr {

namespace fs = std::filesystem;

void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("rename failed: " + path.string());
    }
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

// Reads the "# n=<value>" pragma and skips the header line.
Index parse_preamble(std::istream& in, const fs::path& path) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# n=", 0) != 0)
        throw IoError("missing '# n=' pragma: " + path.string());
    Index n = 0;
    if (std::sscanf(line.c_str(), "# n=%" SCNd64, &n) != 1 || n < 1)
        throw IoError("bad '# n=' pragma: " + path.string());
    if (!std::getline(in, line)) throw IoError("missing header row: " + path.string());
    return n;
}

} // namespace

void write_signal_csv(const fs::path& path, const SparseSignal& x) {
    std::ostringstream out;
    out << "# n=" << x.n << "\n";
    out << "index,re,im\n";
    for (const auto& [i, v] : x.entries)
        out << i << "," << fmt_double(v.real()) << "," << fmt_double(v.imag()) << "\n";
    atomic_write(path, out.str());
}

SparseSignal read_signal_csv(const fs::path& path) {
    std::ifstream in = open_input(path);
    SparseSignal x;
    x.n = parse_preamble(in, path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Index i = 0;
        double re = 0, im = 0;
        if (std::sscanf(line.c_str(), "%" SCNd64 ",%lf,%lf", &i, &re, &im) != 3)
            throw IoError("bad signal row '" + line + "' in " + path.string());
        x.entries.emplace_back(i, cplx{re, im});
    }
    x.validate();
    return x;
}

void write_autocorr_csv(const fs::path& path, const Autocorrelation& a) {
    std::ostringstream out;
    out << "# n=" << a.n << "\n";
    out << "lag,re,im\n";
    for (std::size_t i = 0; i < a.values.size(); ++i)
        out << i << "," << fmt_double(a.values[i].real()) << "," << fmt_double(a.values[i].imag())
            << "\n";
    atomic_write(path, out.str());
}

Autocorrelation read_autocorr_csv(const fs::path& path) {
    std::ifstream in = open_input(path);
    Autocorrelation a;
    a.n = parse_preamble(in, path);
    a.values.assign(static_cast<std::size_t>(a.n), cplx{0.0, 0.0});
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Index lag = 0;
        double re = 0, im = 0;
        if (std::sscanf(line.c_str(), "%" SCNd64 ",%lf,%lf", &lag, &re, &im) != 3)
            throw IoError("bad autocorrelation row '" + line + "' in " + path.string());
        if (lag < 0 || lag >= a.n) throw IoError("lag out of range in " + path.string());
        a.values[static_cast<std::size_t>(lag)] = cplx{re, im};
    }
    return a;
}

void write_set_file(const fs::path& path, const std::vector<Index>& elems) {
    std::ostringstream out;
    for (Index e : elems) out << e << "\n";
    atomic_write(path, out.str());
}

std::vector<Index> read_set_file(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::vector<Index> elems;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Index v = 0;
        if (std::sscanf(line.c_str(), "%" SCNd64, &v) != 1)
            throw IoError("bad set row '" + line + "' in " + path.string());
        elems.push_back(v);
    }
    if (elems.empty()) throw IoError("empty set file: " + path.string());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return elems;
}

} // namespace sparsepr
