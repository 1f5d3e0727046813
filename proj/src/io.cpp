#include "divcent/io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "divcent/error.hpp"

namespace divcent {
namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view kSpace = " \t\r\n";
    const auto first = s.find_first_not_of(kSpace);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(kSpace);
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::uint64_t parse_id(std::string_view field, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError(line_no, "expected a nonnegative integer id, got '" +
                                      std::string(field) + "'");
    }
    if (value > std::numeric_limits<NodeId>::max() - 1) {
        throw ParseError(line_no, "node id too large");
    }
    return value;
}

double parse_real(std::string_view field, std::size_t line_no) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ParseError(line_no, "expected a number, got '" + std::string(field) + "'");
    }
    return value;
}

bool is_skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

// "# nodes: N" (whitespace and the colon are optional).
bool parse_node_directive(std::string_view line, std::size_t& n) {
    line.remove_prefix(1);
    line = trim(line);
    constexpr std::string_view kKey = "nodes";
    if (line.substr(0, kKey.size()) != kKey) return false;
    line = trim(line.substr(kKey.size()));
    if (!line.empty() && (line.front() == ':' || line.front() == '=')) {
        line = trim(line.substr(1));
    }
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc{} || ptr != line.data() + line.size()) return false;
    n = value;
    return true;
}

}  // namespace

EdgeList load_edge_list(std::istream& in) {
    EdgeList result;
    std::size_t declared = 0;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (is_skippable(line)) {
            if (!line.empty()) {
                std::size_t n = 0;
                if (parse_node_directive(line, n)) declared = std::max(declared, n);
            }
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 2) {
            throw ParseError(line_no, "expected 'src,dst'");
        }
        const auto src = static_cast<NodeId>(parse_id(fields[0], line_no));
        const auto dst = static_cast<NodeId>(parse_id(fields[1], line_no));
        result.n = std::max<std::size_t>(result.n, std::max(src, dst) + std::size_t{1});
        result.edges.emplace_back(src, dst);
    }
    if (in.bad()) {
        throw Error(ErrorKind::IoError, "failed reading edge list");
    }
    result.n = std::max(result.n, declared);
    return result;
}

AffiliationMatrix load_affiliations(std::istream& in, std::size_t n, AffiliationFormat format,
                                    std::size_t k) {
    if (format == AffiliationFormat::Scalar && k != 2) {
        throw Error(ErrorKind::WrongK, "scalar affiliations always describe two communities");
    }
    if (k == 0) {
        throw Error(ErrorKind::BadParams, "affiliation needs at least one community");
    }
    std::vector<double> rows(n * k, 0.0);
    std::vector<bool> seen(n, false);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (is_skippable(line)) continue;
        const auto fields = split_fields(line);
        const std::size_t expected = format == AffiliationFormat::Scalar ? 2 : k + 1;
        if (fields.size() != expected) {
            throw ParseError(line_no, fmt::format("expected {} fields, found {}", expected,
                                                  fields.size()));
        }
        const auto node = parse_id(fields[0], line_no);
        if (node >= n) {
            throw Error(ErrorKind::OutOfRangeNode,
                        fmt::format("line {}: node {} outside [0, {})", line_no, node, n));
        }
        if (seen[node]) {
            throw Error(ErrorKind::DuplicateNode,
                        fmt::format("line {}: node {} listed twice", line_no, node));
        }
        seen[node] = true;
        double* row = rows.data() + node * k;

        if (format == AffiliationFormat::Scalar) {
            const double v = parse_real(fields[1], line_no);
            if (v < -1.0 || v > 1.0) {
                throw ParseError(line_no, "scalar affiliation must lie in [-1, 1]");
            }
            row[0] = (1.0 - v) / 2.0;
            row[1] = (1.0 + v) / 2.0;
            continue;
        }

        double total = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            row[c] = parse_real(fields[c + 1], line_no);
            if (row[c] < 0.0) {
                throw Error(ErrorKind::BadSimplex,
                            fmt::format("line {}: negative affiliation weight", line_no));
            }
            total += row[c];
        }
        if (std::abs(total - 1.0) > kRenormalizeTolerance) {
            throw Error(ErrorKind::BadSimplex,
                        fmt::format("line {}: weights sum to {}, not 1", line_no, total));
        }
        for (std::size_t c = 0; c < k; ++c) row[c] /= total;
    }
    if (in.bad()) {
        throw Error(ErrorKind::IoError, "failed reading affiliations");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!seen[i]) {
            throw Error(ErrorKind::MissingNode, fmt::format("node {} has no affiliation", i));
        }
    }
    return AffiliationMatrix(k, std::move(rows));
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "# nodes: " << g.size() << '\n';
    for (const auto& [u, v] : g.edges()) {
        out << u << ',' << v << '\n';
    }
}

void write_affiliations(std::ostream& out, const AffiliationMatrix& a) {
    out << "# node";
    for (std::size_t c = 1; c <= a.communities(); ++c) out << ",q" << c;
    out << '\n';
    for (NodeId i = 0; i < a.size(); ++i) {
        out << i;
        for (double q : a.row(i)) out << ',' << fmt::format("{}", q);
        out << '\n';
    }
}

}  // namespace divcent
