#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "reppact/model.hpp"

namespace reppact::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// RFC 4180 records: quoted fields, doubled quotes, CRLF or LF line ends.
// A leading UTF-8 BOM is skipped. Blank lines are dropped.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string>& fields);

// candidate_id,display_name,<attr1>,<attr2>,...
std::vector<CandidateRecord> parse_candidates_csv(std::string_view text);
std::string write_candidates_csv(std::span<const CandidateRecord> roster);

struct BallotFile {
  std::vector<Ballot> ballots;
  std::vector<std::string> warnings;  // e.g. repeated ids inside one selection list
};

// ballot_id,selections,receipt -- no other columns are accepted.
BallotFile parse_ballots_csv(std::string_view text);
std::string write_ballots_csv(std::span<const Ballot> ballots);

// candidate_id,votes
TallyResult parse_tally_csv(std::string_view text);
// Sorted by votes descending, then candidate_id ascending.
std::string write_tally_csv(const TallyResult& tally);

}  // namespace reppact::io
