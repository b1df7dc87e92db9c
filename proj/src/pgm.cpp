#include "roughcp/pgm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

namespace roughcp {

namespace {

// Reads the next header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in, const std::string& path) {
    std::string tok;
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    while (c != EOF && !std::isspace(c) && c != '#') {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (c == '#') in.unget();
    if (tok.empty()) throw std::runtime_error("malformed header in " + path);
    return tok;
}

long parse_dim(const std::string& tok, const std::string& path) {
    long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || v <= 0)
        throw std::runtime_error("malformed header in " + path);
    return v;
}

}  // namespace

HeightField read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);

    const std::string magic = next_token(in, path);
    if (magic != "P5") throw std::runtime_error("unsupported format in " + path + " (need binary P5)");
    const long width = parse_dim(next_token(in, path), path);
    const long height = parse_dim(next_token(in, path), path);
    const long maxval = parse_dim(next_token(in, path), path);
    if (maxval != 255 && maxval != 65535)
        throw std::runtime_error("unsupported maxval " + std::to_string(maxval) + " in " + path);
    // next_token consumed the single whitespace byte that ends the header

    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> buf(static_cast<std::size_t>(width) * height * bytes);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
        throw std::runtime_error("truncated payload in " + path);

    HeightField field;
    field.values.resize(height, width);
    const unsigned char* p = buf.data();
    for (long r = 0; r < height; ++r) {
        for (long c = 0; c < width; ++c) {
            std::uint32_t v = *p++;
            if (bytes == 2) v = (v << 8) | *p++;
            field.values(r, c) = static_cast<double>(v);
        }
    }
    return field;
}

void write_pgm(const std::string& path, const HeightField& field, int bitdepth,
               const std::string& comment) {
    if (bitdepth != 8 && bitdepth != 16)
        throw std::invalid_argument("write_pgm: bitdepth must be 8 or 16");
    if (field.values.size() == 0) throw std::invalid_argument("write_pgm: empty field");
    if (!field.values.allFinite()) throw std::invalid_argument("write_pgm: non-finite values");

    const double lo = field.values.minCoeff();
    const double hi = field.values.maxCoeff();
    const std::uint32_t maxval = bitdepth == 16 ? 65535u : 255u;
    const double scale = hi > lo ? maxval / (hi - lo) : 0.0;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "P5\n";
    if (!comment.empty()) {
        std::string flat = comment;
        for (char& ch : flat)
            if (ch == '\n' || ch == '\r') ch = ' ';
        out << "# " << flat << "\n";
    }
    out << field.width() << " " << field.height() << "\n" << maxval << "\n";
    std::vector<unsigned char> buf;
    buf.reserve(static_cast<std::size_t>(field.values.size()) * (bitdepth / 8));
    for (Eigen::Index r = 0; r < field.height(); ++r) {
        for (Eigen::Index c = 0; c < field.width(); ++c) {
            const auto v = static_cast<std::uint32_t>(std::floor((field.values(r, c) - lo) * scale + 0.5));
            if (bitdepth == 16) buf.push_back(static_cast<unsigned char>(v >> 8));
            buf.push_back(static_cast<unsigned char>(v & 0xFF));
        }
    }
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write failed for " + path);
}

PointCloud read_xyz(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    PointCloud cloud;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x)) continue;  // blank or comment-only line
        if (!(ls >> y >> z))
            throw std::runtime_error("malformed point on line " + std::to_string(lineno) + " of " + path);
        double extra;
        if (ls >> extra)
            throw std::runtime_error("malformed point on line " + std::to_string(lineno) + " of " + path);
        cloud.points.emplace_back(x, y, z);
    }
    return cloud;
}

}  // namespace roughcp
