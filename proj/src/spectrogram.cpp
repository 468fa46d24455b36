#include "sbs/spectrogram.hpp"

#include "sbs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sbs {

double Spectrogram::max_intensity() const {
    double m = 0.0;
    for (const auto& row : intensity)
        for (double v : row)
            m = std::max(m, v);
    return m;
}

void Spectrogram::check() const {
    if (intensity.size() != freq_axis_hz.size())
        throw Error(Errc::LengthMismatch, "row count does not match frequency axis");
    for (const auto& row : intensity)
        if (row.size() != time_axis_s.size())
            throw Error(Errc::LengthMismatch, "column count does not match time axis");
    for (std::size_t i = 1; i < freq_axis_hz.size(); ++i)
        if (freq_axis_hz[i] <= freq_axis_hz[i - 1])
            throw Error(Errc::InvalidSpec, "frequency axis not strictly increasing");
    for (std::size_t i = 1; i < time_axis_s.size(); ++i)
        if (time_axis_s[i] <= time_axis_s[i - 1])
            throw Error(Errc::InvalidSpec, "time axis not strictly increasing");
}

void normalize_global_max(Spectrogram& spec) {
    const double m = spec.max_intensity();
    spec.peak_value = m;
    if (m <= 0.0)
        return; // all-zero: skip, tag stays None
    for (auto& row : spec.intensity)
        for (double& v : row)
            v /= m;
    spec.normalization = Normalization::GlobalMax;
}

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void write_spectrogram_csv(const Spectrogram& spec, const std::string& path) {
    spec.check();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::ConfigInvalid, "cannot open for writing: " + path);
    for (double t : spec.time_axis_s)
        out << ',' << format_value(t);
    out << '\n';
    for (std::size_t r = 0; r < spec.n_freq(); ++r) {
        out << format_value(spec.freq_axis_hz[r]);
        for (double v : spec.intensity[r])
            out << ',' << format_value(v);
        out << '\n';
    }
}

Spectrogram read_spectrogram_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::ConfigInvalid, "cannot open for reading: " + path);
    Spectrogram spec;
    std::string line;
    if (!std::getline(in, line))
        throw Error(Errc::ConfigInvalid, "empty spectrogram file: " + path);

    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        return cells;
    };

    auto header = split(line);
    for (std::size_t i = 1; i < header.size(); ++i)
        spec.time_axis_s.push_back(std::strtod(header[i].c_str(), nullptr));

    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto cells = split(line);
        if (cells.size() != spec.time_axis_s.size() + 1)
            throw Error(Errc::ConfigInvalid, "ragged spectrogram row in " + path);
        spec.freq_axis_hz.push_back(std::strtod(cells[0].c_str(), nullptr));
        std::vector<double> row(cells.size() - 1);
        for (std::size_t i = 1; i < cells.size(); ++i)
            row[i - 1] = std::strtod(cells[i].c_str(), nullptr);
        spec.intensity.push_back(std::move(row));
    }
    spec.peak_value = spec.max_intensity();
    spec.check();
    return spec;
}

void write_spectrogram_pgm(const Spectrogram& spec, const std::string& path) {
    spec.check();
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(Errc::ConfigInvalid, "cannot open for writing: " + path);
    const double m = spec.max_intensity();
    out << "P5\n" << spec.n_time() << ' ' << spec.n_freq() << "\n255\n";
    // Image top row = highest frequency; row 0 of the matrix lands at the bottom.
    for (std::size_t r = spec.n_freq(); r-- > 0;) {
        std::string row_bytes(spec.n_time(), '\0');
        for (std::size_t c = 0; c < spec.n_time(); ++c) {
            const double v = m > 0.0 ? spec.intensity[r][c] / m : 0.0;
            row_bytes[c] = static_cast<char>(
                static_cast<unsigned char>(std::lround(255.0 * std::clamp(v, 0.0, 1.0))));
        }
        out.write(row_bytes.data(), static_cast<std::streamsize>(row_bytes.size()));
    }
}

std::size_t decimation_factor(double sample_rate_hz, double target_rate_hz) {
    if (target_rate_hz <= 0.0 || target_rate_hz >= sample_rate_hz)
        return 1;
    return std::max<std::size_t>(1, static_cast<std::size_t>(sample_rate_hz / target_rate_hz));
}

} // namespace sbs
