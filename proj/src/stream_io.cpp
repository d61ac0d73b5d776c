#include "dgq/stream_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dgq {

std::optional<StreamEdge> parse_stream_line(std::string_view line, std::size_t line_no) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty() || line.front() == '#') return std::nullopt;

  std::string_view fields[6];
  std::size_t n = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (n == 6) throw ParseError("expected 6 tab-separated fields, got more", line_no);
    fields[n++] = line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start);
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (n != 6) throw ParseError("expected 6 tab-separated fields, got " + std::to_string(n), line_no);
  for (std::size_t i = 1; i < 6; ++i) {
    if (fields[i].empty()) throw ParseError("field " + std::to_string(i + 1) + " is empty", line_no);
  }

  StreamEdge e;
  const auto ts = fields[0];
  const auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), e.timestamp);
  if (ts.empty() || ec != std::errc() || ptr != ts.data() + ts.size() || ts.front() == '-') {
    throw ParseError("timestamp '" + std::string(ts) + "' is not a non-negative integer", line_no);
  }
  e.src = fields[1];
  e.src_type = fields[2];
  e.edge_type = fields[3];
  e.dst = fields[4];
  e.dst_type = fields[5];
  return e;
}

std::vector<StreamEdge> read_stream(std::istream& in) {
  std::vector<StreamEdge> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto e = parse_stream_line(line, line_no)) out.push_back(std::move(*e));
  }
  return out;
}

std::vector<StreamEdge> read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stream file '" + path + "'");
  try {
    return read_stream(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_stream_line(const StreamEdge& e) {
  std::string s = std::to_string(e.timestamp);
  for (const std::string* f : {&e.src, &e.src_type, &e.edge_type, &e.dst, &e.dst_type}) {
    s += '\t';
    s += *f;
  }
  return s;
}

void write_stream(std::ostream& out, std::span<const StreamEdge> edges) {
  for (const auto& e : edges) out << format_stream_line(e) << '\n';
}

std::string format_match_line(std::uint64_t seq, const Match& m) {
  return std::to_string(seq) + '\t' + std::to_string(m.t_min()) + '\t' + std::to_string(m.t_max()) + '\t' +
         m.format_pairs();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace dgq
