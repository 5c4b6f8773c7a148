// Copyright 2026 The clparity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Output plumbing: CSV text, atomic file writes, a worker pool and a minimal
// SVG line plotter.

#ifndef CLPARITY_IO_HPP_
#define CLPARITY_IO_HPP_

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <variant>
#include <vector>

namespace clparity {

// Shortest round-trip representation; NaN becomes an empty field.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

inline std::string format_number(std::int64_t v) { return std::to_string(v); }

// A field is quoted only if it needs to be.
inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  using Cell = std::variant<std::string, double, std::int64_t>;

  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {
    line(header_);
  }

  void row(const std::vector<Cell>& cells) {
    if (cells.size() != header_.size()) {
      throw std::invalid_argument("CsvWriter: row width differs from header");
    }
    std::vector<std::string> text;
    text.reserve(cells.size());
    for (const Cell& c : cells) {
      text.push_back(std::visit(
          [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
              return v;
            } else {
              return format_number(v);
            }
          },
          c));
    }
    line(text);
  }

  const std::string& str() const { return out_; }

 private:
  void line(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ += ',';
      out_ += csv_escape(fields[i]);
    }
    out_ += '\n';
  }

  std::vector<std::string> header_;
  std::string out_;
};

// Parsed CSV with a header row. Handles the quoting CsvWriter emits.
class CsvTable {
 public:
  static CsvTable parse(const std::string& text) {
    CsvTable t;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool any = false;
    auto end_row = [&] {
      fields.push_back(cur);
      cur.clear();
      if (t.header_.empty()) {
        t.header_ = fields;
      } else {
        t.rows_.push_back(fields);
      }
      fields.clear();
      any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      if (quoted) {
        if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cur += ch;
        }
        continue;
      }
      any = true;
      if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else if (ch == '\n') {
        end_row();
      } else if (ch != '\r') {
        cur += ch;
      }
    }
    if (any || !cur.empty() || !fields.empty()) end_row();
    return t;
  }

  const std::vector<std::string>& header() const { return header_; }
  std::size_t size() const { return rows_.size(); }

  int column(const std::string& name) const {
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) throw std::out_of_range("CsvTable: no column " + name);
    return static_cast<int>(it - header_.begin());
  }

  const std::string& cell(std::size_t r, int c) const {
    return rows_.at(r).at(static_cast<std::size_t>(c));
  }

  // Empty cells read as NaN.
  double number(std::size_t r, int c) const {
    const std::string& s = cell(r, c);
    if (s.empty()) return std::nan("");
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc()) throw std::invalid_argument("CsvTable: bad number " + s);
    return v;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to a sibling temporary file, then renames over the target.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// thrown is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        {
          std::lock_guard<std::mutex> lock(mu);
          if (error) return;
        }
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// SVG line plots.

struct PlotSpec {
  std::string x;       // column for the horizontal axis
  std::vector<std::string> y;  // one or more value columns
  std::string series;  // optional grouping column; one polyline per value
  bool log_x = false;
  bool log_y = false;
  std::string title;
};

namespace detail {

inline std::string svg_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string fixed(double v, int digits = 2) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(digits);
  ss << v;
  return ss.str();
}

inline std::string tick_label(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

}  // namespace detail

// Renders a CSV as a line plot. Rows with an empty x or y cell are skipped;
// series appear in order of first occurrence.
inline std::string svg_line_plot(const CsvTable& t, const PlotSpec& spec) {
  constexpr double kW = 720, kH = 440, kL = 70, kR = 180, kT = 40, kB = 50;
  const int xc = t.column(spec.x);
  const int sc = spec.series.empty() ? -1 : t.column(spec.series);
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Series> series;
  std::map<std::string, std::size_t> index;
  auto tf = [](double v, bool lg) { return lg ? std::log10(v) : v; };
  for (const auto& ycol : spec.y) {
    const int yc = t.column(ycol);
    for (std::size_t r = 0; r < t.size(); ++r) {
      const double x = t.number(r, xc);
      const double y = t.number(r, yc);
      if (std::isnan(x) || std::isnan(y)) continue;
      if ((spec.log_x && x <= 0) || (spec.log_y && y <= 0)) continue;
      std::string name = sc >= 0 ? spec.series + "=" + t.cell(r, sc) : "";
      if (spec.y.size() > 1 || name.empty()) {
        name = name.empty() ? ycol : name + " " + ycol;
      }
      auto [it, fresh] = index.try_emplace(name, series.size());
      if (fresh) series.push_back({name, {}});
      series[it->second].pts.emplace_back(tf(x, spec.log_x), tf(y, spec.log_y));
    }
  }
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const auto& s : series) {
    for (auto [x, y] : s.pts) {
      if (first) {
        x0 = x1 = x;
        y0 = y1 = y;
        first = false;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  auto px = [&](double x) { return kL + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kT + ph - (y - y0) / (y1 - y0) * ph; };
  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                  "#bcbd22", "#17becf"};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
    << kH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    o << "<text x=\"" << kL << "\" y=\"24\" font-size=\"14\">"
      << detail::svg_escape(spec.title) << "</text>\n";
  }
  o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw
    << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0;
    const double fy = y0 + (y1 - y0) * i / 4.0;
    const double vx = spec.log_x ? std::pow(10.0, fx) : fx;
    const double vy = spec.log_y ? std::pow(10.0, fy) : fy;
    o << "<text x=\"" << detail::fixed(px(fx)) << "\" y=\"" << kH - kB + 16
      << "\" text-anchor=\"middle\">" << detail::tick_label(vx) << "</text>\n";
    o << "<text x=\"" << kL - 6 << "\" y=\"" << detail::fixed(py(fy) + 4)
      << "\" text-anchor=\"end\">" << detail::tick_label(vy) << "</text>\n";
  }
  std::string ylabel;
  for (std::size_t i = 0; i < spec.y.size(); ++i) ylabel += (i ? ", " : "") + spec.y[i];
  o << "<text x=\"" << kL + pw / 2 << "\" y=\"" << kH - 10
    << "\" text-anchor=\"middle\">" << detail::svg_escape(spec.x)
    << (spec.log_x ? " (log)" : "") << "</text>\n";
  o << "<text transform=\"translate(16," << kT + ph / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << detail::svg_escape(ylabel)
    << (spec.log_y ? " (log)" : "") << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % 10];
    o << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < series[i].pts.size(); ++j) {
      if (j) o << ' ';
      o << detail::fixed(px(series[i].pts[j].first)) << ','
        << detail::fixed(py(series[i].pts[j].second));
    }
    o << "\"/>\n";
    const double ly = kT + 14 + 16 * static_cast<double>(i);
    o << "<line x1=\"" << kW - kR + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
      << kW - kR + 32 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << kW - kR + 38 << "\" y=\"" << ly << "\">"
      << detail::svg_escape(series[i].name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace clparity

#endif  // CLPARITY_IO_HPP_
