#include "usvctl/trace_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace usvctl {

namespace {

void append_value(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  out += buf;
}

}  // namespace

std::string trace_to_csv_text(const std::vector<SimRecord>& records) {
  std::string out;
  out.reserve(records.size() * 220 + 256);
  out += kTraceCsvHeader;
  out += '\n';

  for (const SimRecord& r : records) {
    double row[26] = {
        r.t,
        r.eta[0], r.eta[1], r.eta[2],
        r.nu[0], r.nu[1], r.nu[2],
        r.eta_d[0], r.eta_d[1], r.eta_d[2],
        r.tau[0], r.tau[1], r.tau[2],
        r.tau_rate[0], r.tau_rate[1], r.tau_rate[2],
        r.b[0], r.b[1], r.b[2],
        r.b_hat[0], r.b_hat[1], r.b_hat[2],
        r.z1[0], r.z1[1], r.z1[2],
        r.lyapunov,
    };
    for (int i = 0; i < 26; ++i) {
      if (i > 0) out += ',';
      append_value(out, row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<SimRecord>& records,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  const std::string text = trace_to_csv_text(records);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

std::vector<SimRecord> parse_csv_text(const std::string& text) {
  std::vector<SimRecord> records;
  size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    const std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;

    if (first) {
      if (line != kTraceCsvHeader) {
        throw std::invalid_argument("trace CSV: unexpected header row");
      }
      first = false;
      continue;
    }

    double v[26];
    const char* p = line.c_str();
    for (int i = 0; i < 26; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(p, &end);
      if (end == p) {
        throw std::invalid_argument("trace CSV: malformed row: " + line);
      }
      p = end;
      if (i < 25) {
        if (*p != ',') {
          throw std::invalid_argument("trace CSV: expected 26 columns: " +
                                      line);
        }
        ++p;
      }
    }
    if (*p != '\0') {
      throw std::invalid_argument("trace CSV: trailing data in row: " + line);
    }

    SimRecord r;
    r.t = v[0];
    r.eta = Vec3(v[1], v[2], v[3]);
    r.nu = Vec3(v[4], v[5], v[6]);
    r.eta_d = Vec3(v[7], v[8], v[9]);
    r.tau = Vec3(v[10], v[11], v[12]);
    r.tau_rate = Vec3(v[13], v[14], v[15]);
    r.b = Vec3(v[16], v[17], v[18]);
    r.b_hat = Vec3(v[19], v[20], v[21]);
    r.z1 = Vec3(v[22], v[23], v[24]);
    r.lyapunov = v[25];
    records.push_back(r);
  }
  if (first) {
    throw std::invalid_argument("trace CSV: empty document");
  }
  return records;
}

std::vector<SimRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_csv_text(text);
}

}  // namespace usvctl
