#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dgq/graph.hpp"
#include "dgq/query.hpp"

namespace dgq {

/// Parses `timestamp\tsrc\tsrc_type\tedge_type\tdst\tdst_type`. Returns nullopt
/// for blank lines and `#` comments; throws ParseError naming `line_no`.
std::optional<StreamEdge> parse_stream_line(std::string_view line, std::size_t line_no);

std::vector<StreamEdge> read_stream(std::istream& in);
std::vector<StreamEdge> read_stream_file(const std::string& path);

void write_stream(std::ostream& out, std::span<const StreamEdge> edges);
std::string format_stream_line(const StreamEdge& e);

/// `seq\tt_min\tt_max\tqedge=edge;...`
std::string format_match_line(std::uint64_t seq, const Match& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dgq
