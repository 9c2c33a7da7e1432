#pragma once

// Text helpers shared by every on-disk format: shortest-lossless real
// formatting, strict number parsing, and write-then-rename file output.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dyrc/error.hpp"

namespace dyrc::io {

/// %.17g rendering; round-trips every finite double exactly.
[[nodiscard]] inline std::string format_real(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

[[nodiscard]] inline double parse_real(std::string_view s) {
    std::string tmp(s);
    while (!tmp.empty() && (tmp.back() == '\r' || tmp.back() == ' ')) tmp.pop_back();
    std::size_t lead = 0;
    while (lead < tmp.size() && tmp[lead] == ' ') ++lead;
    tmp.erase(0, lead);
    if (tmp.empty()) throw Error(Errc::ParseError, "empty numeric field");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size() || errno == ERANGE)
        throw Error(Errc::ParseError, "not a number: '" + tmp + "'");
    return v;
}

[[nodiscard]] inline long long parse_int(std::string_view s) {
    std::string tmp(s);
    while (!tmp.empty() && (tmp.back() == '\r' || tmp.back() == ' ')) tmp.pop_back();
    if (tmp.empty()) throw Error(Errc::ParseError, "empty integer field");
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(tmp.c_str(), &end, 10);
    if (end != tmp.c_str() + tmp.size() || errno == ERANGE)
        throw Error(Errc::ParseError, "not an integer: '" + tmp + "'");
    return v;
}

[[nodiscard]] inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

/// Writes to a sibling temporary and renames it over `path`, so a reader
/// never observes a partially written file.
inline void atomic_write(const std::filesystem::path& path, std::string_view contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::IoError, "cannot open " + tmp.string() + " for writing");
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) throw Error(Errc::IoError, "write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(Errc::IoError, "rename to " + path.string() + " failed: " + ec.message());
}

[[nodiscard]] inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace dyrc::io
