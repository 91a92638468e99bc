#include "reppact/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace reppact::io {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (field_started || !field.empty()) {
          throw Error(ErrorCode::kParse, "stray quote on line " + std::to_string(line));
        }
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        field.push_back(ch);
    }
  }
  if (quoted) throw Error(ErrorCode::kParse, "unterminated quoted field");
  if (!field.empty() || !row.empty() || field_started) end_row();
  return rows;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_field(fields[i]);
  }
  out.push_back('\n');
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

void expect_header(const std::vector<std::vector<std::string>>& rows, const std::vector<std::string>& header,
                   std::string_view what) {
  if (rows.empty() || rows[0] != header) {
    std::string want;
    for (const auto& h : header) want += (want.empty() ? "" : ",") + h;
    throw Error(ErrorCode::kParse, std::string(what) + ": header must be exactly '" + want + "'");
  }
}

void expect_width(const std::vector<std::string>& row, std::size_t width, std::size_t index, std::string_view what) {
  if (row.size() != width) {
    throw Error(ErrorCode::kParse, std::string(what) + ": record " + std::to_string(index) + " has " +
                                       std::to_string(row.size()) + " fields, expected " + std::to_string(width));
  }
}

}  // namespace

std::vector<CandidateRecord> parse_candidates_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "candidate_id" || rows[0][1] != "display_name") {
    throw Error(ErrorCode::kParse, "candidates CSV: header must start with 'candidate_id,display_name'");
  }
  const auto& header = rows[0];
  std::vector<CandidateRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], header.size(), r, "candidates CSV");
    CandidateRecord rec;
    rec.candidate_id = std::string(trim(rows[r][0]));
    rec.display_name = rows[r][1];
    for (std::size_t c = 2; c < header.size(); ++c) {
      // An empty cell means "no category"; validate_config reports it.
      if (!rows[r][c].empty()) rec.attributes[header[c]] = rows[r][c];
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string write_candidates_csv(std::span<const CandidateRecord> roster) {
  std::set<std::string> attrs;
  for (const auto& c : roster) {
    for (const auto& [k, v] : c.attributes) attrs.insert(k);
  }
  std::vector<std::string> header = {"candidate_id", "display_name"};
  header.insert(header.end(), attrs.begin(), attrs.end());
  std::string out = csv_row(header);
  for (const auto& c : roster) {
    std::vector<std::string> row = {c.candidate_id, c.display_name};
    for (const auto& a : attrs) {
      const std::string* v = c.attribute(a);
      row.push_back(v ? *v : std::string());
    }
    out += csv_row(row);
  }
  return out;
}

BallotFile parse_ballots_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  expect_header(rows, {"ballot_id", "selections", "receipt"}, "ballots CSV");
  BallotFile file;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 3, r, "ballots CSV");
    Ballot b;
    b.ballot_id = rows[r][0];
    std::string_view sel = rows[r][1];
    while (!sel.empty()) {
      const auto bar = sel.find('|');
      std::string_view tok = trim(sel.substr(0, bar));
      if (!tok.empty() && !b.selections.insert(std::string(tok)).second) {
        file.warnings.push_back("ballot '" + b.ballot_id + "': repeated selection '" + std::string(tok) +
                                "' counted once");
      }
      if (bar == std::string_view::npos) break;
      sel.remove_prefix(bar + 1);
    }
    if (!rows[r][2].empty()) b.receipt = rows[r][2];
    file.ballots.push_back(std::move(b));
  }
  return file;
}

std::string write_ballots_csv(std::span<const Ballot> ballots) {
  std::string out = "ballot_id,selections,receipt\n";
  for (const auto& b : ballots) {
    std::string sel;
    for (const auto& id : b.selections) sel += (sel.empty() ? "" : "|") + id;
    out += csv_row({b.ballot_id, sel, b.receipt.value_or("")});
  }
  return out;
}

TallyResult parse_tally_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  expect_header(rows, {"candidate_id", "votes"}, "tally CSV");
  TallyResult tally;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    expect_width(rows[r], 2, r, "tally CSV");
    const std::string& cell = rows[r][1];
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || v < 0) {
      throw Error(ErrorCode::kParse, "tally CSV: bad vote count '" + cell + "' on record " + std::to_string(r));
    }
    if (!tally.votes.emplace(rows[r][0], v).second) {
      throw Error(ErrorCode::kParse, "tally CSV: candidate '" + rows[r][0] + "' listed twice");
    }
    tally.total_votes_cast += v;
  }
  return tally;
}

std::string write_tally_csv(const TallyResult& tally) {
  std::vector<std::pair<CandidateId, std::int64_t>> rows(tally.votes.begin(), tally.votes.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out = "candidate_id,votes\n";
  for (const auto& [id, v] : rows) out += csv_row({id, std::to_string(v)});
  return out;
}

}  // namespace reppact::io
