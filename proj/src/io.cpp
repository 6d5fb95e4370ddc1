#include "packtrack/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace packtrack {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& path,
                    std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) fail(path, line, "bad number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(path, line, "bad number '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& path, std::size_t line) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) fail(path, line, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(path, line, "bad integer '" + s + "'");
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

Instance load_instance(const std::string& detections_path,
                       const std::string& subtracks_path, double theta0,
                       int window) {
  if (window < 1) throw std::invalid_argument("window (K) must be >= 1");

  std::ifstream din = open_in(detections_path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(din, line)) fail(detections_path, 1, "missing header");
  ++lineno;
  auto header = split_csv(line);
  const bool with_conf = header.size() == 5 && header[4] == "conf";
  if (!(header.size() == 4 || with_conf) || header[0] != "id" ||
      header[1] != "frame" || header[2] != "x" || header[3] != "y")
    fail(detections_path, 1, "expected header id,frame,x,y[,conf]");

  std::vector<Detection> detections;
  while (std::getline(din, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != header.size())
      fail(detections_path, lineno, "wrong column count");
    Detection d;
    d.id = parse_int(f[0], detections_path, lineno);
    d.frame = parse_int(f[1], detections_path, lineno);
    d.pos[0] = parse_double(f[2], detections_path, lineno);
    d.pos[1] = parse_double(f[3], detections_path, lineno);
    if (with_conf && !f[4].empty())
      d.confidence = parse_double(f[4], detections_path, lineno);
    detections.push_back(d);
  }
  std::sort(detections.begin(), detections.end(),
            [](const Detection& a, const Detection& b) { return a.id < b.id; });
  validate_detections(detections);  // dense ids, frames, finite coords

  std::ifstream sin = open_in(subtracks_path);
  lineno = 0;
  if (!std::getline(sin, line)) fail(subtracks_path, 1, "missing header");
  ++lineno;
  header = split_csv(line);
  if (static_cast<int>(header.size()) != window + 1 || header.back() != "cost")
    fail(subtracks_path, 1,
         "expected header s1,...,s" + std::to_string(window) + ",cost");

  std::vector<Subtrack> subtracks;
  while (std::getline(sin, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (static_cast<int>(f.size()) != window + 1)
      fail(subtracks_path, lineno, "wrong column count");
    Subtrack s;
    for (int k = 0; k < window; ++k) {
      if (f[k] == "-") {
        s.slots.push_back(kNoObs);
        continue;
      }
      const int id = parse_int(f[k], subtracks_path, lineno);
      if (id < 0 || id >= static_cast<int>(detections.size()))
        fail(subtracks_path, lineno,
             "dangling detection id " + std::to_string(id));
      s.slots.push_back(id);
    }
    s.cost = parse_double(f[window], subtracks_path, lineno);
    try {
      validate_subtrack(detections, window, s);
    } catch (const std::invalid_argument& e) {
      fail(subtracks_path, lineno, e.what());
    }
    subtracks.push_back(std::move(s));
  }
  return make_instance(std::move(detections), window, theta0,
                       std::move(subtracks));
}

void save_instance(const Instance& instance,
                   const std::string& detections_path,
                   const std::string& subtracks_path) {
  bool any_conf = false;
  for (const Detection& d : instance.detections)
    if (d.confidence) any_conf = true;

  std::ofstream dout = open_out(detections_path);
  dout << (any_conf ? "id,frame,x,y,conf\n" : "id,frame,x,y\n");
  for (const Detection& d : instance.detections) {
    dout << d.id << ',' << d.frame << ',' << format_double(d.pos[0]) << ','
         << format_double(d.pos[1]);
    if (any_conf) {
      dout << ',';
      if (d.confidence) dout << format_double(*d.confidence);
    }
    dout << '\n';
  }

  std::ofstream sout = open_out(subtracks_path);
  for (int k = 1; k <= instance.window; ++k) sout << 's' << k << ',';
  sout << "cost\n";
  for (const Subtrack& s : instance.graph.subtracks) {
    for (int slot : s.slots) {
      if (slot == kNoObs)
        sout << "-,";
      else
        sout << slot << ',';
    }
    sout << format_double(s.cost) << '\n';
  }
}

std::vector<Track> load_tracks(const std::string& path) {
  std::ifstream in = open_in(path);
  std::vector<Track> tracks;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Track t;
    for (const std::string& tok : split_csv(line))
      t.detections.push_back(parse_int(tok, path, lineno));
    tracks.push_back(std::move(t));
  }
  return tracks;
}

void save_tracks(std::span<const Track> tracks, const std::string& path) {
  std::ofstream out = open_out(path);
  for (const Track& t : tracks) {
    for (std::size_t i = 0; i < t.detections.size(); ++i) {
      if (i) out << ',';
      out << t.detections[i];
    }
    out << '\n';
  }
}

void save_trace(std::span<const TraceRecord> trace, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "iter,elapsed_s,lb,ub,n_cols,n_rows,event\n";
  for (const TraceRecord& r : trace)
    out << r.iter << ',' << format_double(r.elapsed) << ','
        << format_double(r.lb) << ',' << format_double(r.ub) << ','
        << r.n_columns << ',' << r.n_rows << ',' << to_string(r.event) << '\n';
}

std::vector<double> load_lambda(const std::string& path, int num_detections) {
  std::ifstream in = open_in(path);
  std::vector<double> lambda(num_detections, 0.0);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) fail(path, 1, "missing header");
  ++lineno;
  if (split_csv(line) != std::vector<std::string>{"det", "lambda"})
    fail(path, 1, "expected header det,lambda");
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 2) fail(path, lineno, "wrong column count");
    const int d = parse_int(f[0], path, lineno);
    if (d < 0 || d >= num_detections)
      fail(path, lineno, "dangling detection id " + std::to_string(d));
    lambda[d] = parse_double(f[1], path, lineno);
  }
  return lambda;
}

}  // namespace packtrack
