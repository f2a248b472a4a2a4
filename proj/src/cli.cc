/*
 * Copyright 2026 The jpeg-gvm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gvm/cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "gvm/codec.h"
#include "gvm/default_tables.h"
#include "gvm/error.h"
#include "gvm/histogram.h"
#include "gvm/jpeg_file.h"
#include "gvm/metrics.h"
#include "gvm/optimizer.h"

namespace gvm {

namespace {

namespace fs = std::filesystem;

// Raised for unreadable files and malformed flag values; maps to kExitFormat.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<uint8_t> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteFile(const std::string& path, std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("cannot write " + path);
}

bool IsJpegName(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".jpg" || ext == ".jpeg";
}

// A directory expands to its JPEG files in path order.
std::vector<std::string> ExpandInputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const std::string& in : inputs) {
    if (!fs::is_directory(in)) {
      out.push_back(in);
      continue;
    }
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(in)) {
      if (entry.is_regular_file() && IsJpegName(entry.path())) {
        found.push_back(entry.path().string());
      }
    }
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

// Parses the 1-based "(p^s,m,{a_1,...,a_m})" notation.
Solution ParseSolution(const std::string& text) {
  static const std::regex kForm(R"(\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*\{([\d\s,]*)\}\s*\)\s*)");
  std::smatch match;
  if (!std::regex_match(text, match, kForm)) {
    throw InputError("solution must look like (1,2,{3,1}), got " + text);
  }
  Solution s{std::stoi(match[1]) - 1, {}};
  const std::string list = match[3];
  static const std::regex kNumber(R"(\d+)");
  for (auto it = std::sregex_iterator(list.begin(), list.end(), kNumber);
       it != std::sregex_iterator(); ++it) {
    s.a.push_back(std::stoi(it->str()));
  }
  if (s.p_start < 0 || s.m() != std::stoi(match[2])) {
    throw InputError("solution " + text + " has an inconsistent peak count");
  }
  return s;
}

std::string QualityText(const JpegFile& file) {
  const auto q = EstimateIjgQuality(file);
  return q ? std::to_string(*q) : "";
}

std::string HexRsv(Rsv rsv) {
  std::ostringstream s;
  s << "0x" << std::hex << std::setw(2) << std::setfill('0') << int{rsv.value};
  return s.str();
}

int StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kMalformedStream:
    case ErrorCode::kInvalidCounts:
    case ErrorCode::kDuplicateRsvInput:
      return kExitFormat;
    case ErrorCode::kInsufficientCapacity:
      return kExitCapacity;
    case ErrorCode::kMissingCode:
    case ErrorCode::kMalformedMapping:
    case ErrorCode::kHeaderOverrun:
      return kExitExtract;
  }
  return kExitInternal;
}

// Runs `fn` per file; a failing file is reported and skipped. Returns the
// status of the first failure.
template <typename Fn>
int ForEachFile(const std::vector<std::string>& files, std::ostream& err, Fn&& fn) {
  int status = kExitOk;
  for (const std::string& path : files) {
    int failure = kExitOk;
    try {
      fn(path);
    } catch (const Error& e) {
      err << path << ": " << e.what() << "\n";
      failure = StatusFor(e.code());
    } catch (const InputError& e) {
      err << path << ": " << e.what() << "\n";
      failure = kExitFormat;
    }
    if (status == kExitOk) status = failure;
  }
  return status;
}

struct Analysis {
  Assignment table;
  RsvHistogram hist;
  std::vector<std::optional<Selection>> best_by_peaks;  // index U-1
};

Analysis Analyze(const JpegFile& file, int ac_table, int max_peaks,
                 Strategy strategy) {
  const DhtTable* dht = file.FindTable(TableClass::kAc, ac_table);
  if (dht == nullptr) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "AC table " + std::to_string(ac_table) + " is not defined");
  }
  Analysis a{dht->ToAssignment(), {}, {}};
  a.hist = CountFrequencies(file.scan, a.table, ac_table);
  const Manner manner = strategy == Strategy::kDirectMapping ? Manner::kDirectMapping
                                                             : Manner::kHistogramShifting;
  for (int u = 1; u <= max_peaks; ++u) {
    a.best_by_peaks.push_back(
        MaxCapacitySolution(a.hist.reordered_freqs, a.hist.lengths, u, manner));
  }
  return a;
}

struct Common {
  int ac_table = 0;
  int max_peaks = kDefaultMaxPeaks;
  std::string strategy = "hs";
  std::string default_tables;

  EmbedOptions Options() const {
    EmbedOptions o;
    o.strategy = *ParseStrategy(strategy);
    o.max_peaks = max_peaks;
    o.ac_table = ac_table;
    if (!default_tables.empty()) {
      o.default_tables = ParseDhtSegments(ReadFile(default_tables));
    }
    return o;
  }
};

void AddCommon(CLI::App* cmd, Common* c, bool with_strategy) {
  cmd->add_option("--ac-table", c->ac_table, "AC Huffman table id to modify")
      ->check(CLI::Range(0, 3));
  cmd->add_option("--default-tables", c->default_tables,
                  "file of DHT segments used as the unmodified tables");
  if (with_strategy) {
    cmd->add_option("--strategy", c->strategy, "hs, dm or equal")
        ->check(CLI::IsMember({"hs", "dm", "equal"}));
    cmd->add_option("--max-peaks", c->max_peaks, "largest number of peak bins")
        ->check(CLI::Range(1, 64));
  }
}

void PrintAnalysis(std::ostream& out, const std::string& path, const JpegFile& file,
                   const Analysis& a, int ac_table, int top) {
  const RsvHistogram& h = a.hist;
  out << "file=" << path << "\n"
      << "qf=" << QualityText(file) << "\n"
      << "ac_table=" << ac_table << "\n"
      << "n=" << h.size() << "\n"
      << "n_nonzero=" << h.n_nonzero << "\n"
      << "n_zero=" << h.n_zero << "\n"
      << "coding_redundancy_bits=" << CodingRedundancy(h) << "\n";
  out << "histogram: index, original rsv, frequency, reordered rsv, frequency\n";
  const int rows = std::min<int>(top, static_cast<int>(h.size()));
  for (int i = 0; i < rows; ++i) {
    out << "  " << std::setw(3) << i + 1 << "  " << HexRsv(a.table.slot(i).rsv) << " "
        << std::setw(8) << h.original_freqs[i] << "  "
        << HexRsv(a.table.slot(h.perm[i]).rsv) << " " << std::setw(8)
        << h.reordered_freqs[i] << "\n";
  }
  out << "capacity: max_peaks, capacity_bits, simulated_si_bits, solution\n";
  for (size_t u = 0; u < a.best_by_peaks.size(); ++u) {
    const auto& sel = a.best_by_peaks[u];
    out << "  " << u + 1 << "  ";
    if (sel) {
      out << Capacity(h.reordered_freqs, sel->solution) << "  "
          << sel->simulation.si_total << "  " << sel->solution.ToString() << "\n";
    } else {
      out << "0  0  -\n";
    }
  }
}

int CmdAnalyze(const std::vector<std::string>& inputs, const Common& c, int top,
               bool csv, std::ostream& out, std::ostream& err) {
  const std::vector<std::string> files = ExpandInputs(inputs);
  const bool as_csv = csv || files.size() != inputs.size() || files.size() > 1;
  const Strategy strategy = *ParseStrategy(c.strategy);
  if (as_csv) {
    out << "file,qf,n,n_nonzero,n_zero,c_bits,capacity,si_simulated,solution\n";
  }
  return ForEachFile(files, err, [&](const std::string& path) {
    const JpegFile file = ParseJpeg(ReadFile(path));
    const Analysis a = Analyze(file, c.ac_table, c.max_peaks, strategy);
    if (!as_csv) {
      PrintAnalysis(out, path, file, a, c.ac_table, top);
      return;
    }
    const auto& best = a.best_by_peaks.back();
    out << path << "," << QualityText(file) << "," << a.hist.size() << ","
        << a.hist.n_nonzero << "," << a.hist.n_zero << "," << CodingRedundancy(a.hist)
        << ","
        << (best ? Capacity(a.hist.reordered_freqs, best->solution) : 0) << ","
        << (best ? best->simulation.si_total : 0) << ","
        << (best ? "\"" + best->solution.ToString() + "\"" : "") << "\n";
  });
}

int CmdEmbed(const std::string& input, const std::string& payload_path,
             const std::string& output, const std::string& solution, const Common& c,
             std::ostream& out) {
  EmbedOptions opts = c.Options();
  if (!solution.empty()) opts.forced_solution = ParseSolution(solution);
  const JpegFile file = ParseJpeg(ReadFile(input));
  const std::vector<uint8_t> payload = ReadFile(payload_path);
  const EmbedResult r = Embed(file, payload, opts);
  WriteFile(output, SerializeJpeg(r.marked));
  out << FormatEmbedReport(r.report);
  return kExitOk;
}

int CmdExtract(const std::string& input, const std::string& payload_path,
               const std::string& restored_path, const Common& c, std::ostream& out) {
  const EmbedOptions opts = c.Options();
  const JpegFile marked = ParseJpeg(ReadFile(input));
  const ExtractResult r = ExtractAndRestore(marked, opts.default_tables, c.ac_table);
  WriteFile(payload_path, r.payload);
  if (!restored_path.empty()) WriteFile(restored_path, SerializeJpeg(r.original));
  out << "payload_bytes=" << r.payload.size() << "\n";
  return kExitOk;
}

// Lossless coefficients and unchanged non-scan segments, except DHT
// contents whose length must still match.
int CmdVerify(const std::string& original_path, const std::string& marked_path,
              std::ostream& out) {
  const JpegFile original = ParseJpeg(ReadFile(original_path));
  const JpegFile marked = ParseJpeg(ReadFile(marked_path));
  bool segments_ok = original.segments.size() == marked.segments.size() &&
                     original.trailing_bytes == marked.trailing_bytes;
  for (size_t i = 0; segments_ok && i < original.segments.size(); ++i) {
    const Segment& a = original.segments[i];
    const Segment& b = marked.segments[i];
    segments_ok = a.marker == b.marker && a.fill_bytes == b.fill_bytes &&
                  a.dht.has_value() == b.dht.has_value();
    if (!segments_ok) break;
    segments_ok = a.dht ? SerializeDhtPayload(*a.dht).size() ==
                              SerializeDhtPayload(*b.dht).size()
                        : a.payload == b.payload;
  }
  const bool coefficients_ok = VerifyLossless(original, marked);
  out << "coefficients_identical=" << (coefficients_ok ? "true" : "false") << "\n"
      << "segments_consistent=" << (segments_ok ? "true" : "false") << "\n";
  return coefficients_ok && segments_ok ? kExitOk : kExitExtract;
}

int CmdReport(const std::vector<std::string>& inputs, int64_t payload_bits,
              const Common& c, std::ostream& out, std::ostream& err) {
  const EmbedOptions opts = c.Options();
  out << "file,qf,capacity,C,gfi,pfi,si_simulated,strategy,solution\n";
  return ForEachFile(ExpandInputs(inputs), err, [&](const std::string& path) {
    const JpegFile file = ParseJpeg(ReadFile(path));
    const int64_t capacity = MaxCapacity(file, opts);
    const int64_t usable = std::max<int64_t>(0, capacity - kLengthHeaderBits);
    const int64_t bytes = payload_bits > 0 ? (payload_bits + 7) / 8 : usable / 8;
    // Fixed seed: identical inputs give identical rows.
    std::mt19937 rng(0x67766dU);
    std::vector<uint8_t> payload(static_cast<size_t>(bytes));
    for (auto& b : payload) b = static_cast<uint8_t>(rng());
    const EmbedResult r = Embed(file, payload, opts);
    const EmbedReport& e = r.report;
    out << path << "," << QualityText(file) << "," << capacity << ","
        << e.coding_redundancy_bits << "," << e.gfi_bits << "," << e.pfi_bits << ","
        << e.simulated_si_bits << "," << StrategyName(e.strategy) << ","
        << (e.solution ? "\"" + e.solution->ToString() + "\"" : "") << "\n";
  });
}

int CmdTables(const std::string& input, const std::string& export_path,
              bool standard, std::ostream& out) {
  DhtTables tables;
  if (standard) {
    tables = StandardTables();
  } else {
    const JpegFile file = ParseJpeg(ReadFile(input));
    for (const Segment& s : file.segments) {
      if (s.dht) tables.tables.insert(tables.tables.end(), s.dht->tables.begin(),
                                      s.dht->tables.end());
    }
  }
  if (!export_path.empty()) {
    WriteFile(export_path, SerializeDhtSegments(tables));
    return kExitOk;
  }
  for (const DhtTable& t : tables.tables) {
    const Assignment a = t.ToAssignment();
    out << (t.table_class == TableClass::kDc ? "DC" : "AC") << " table " << int{t.id}
        << ": " << a.size() << " codes\n";
    for (size_t i = 0; i < a.size(); ++i) {
      out << "  " << std::setw(3) << i + 1 << "  " << HexRsv(a.slot(i).rsv) << "  "
          << a.slot(i).code.ToString() << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Reversible data hiding in baseline JPEG bitstreams"};
  app.require_subcommand(1);
  Common common;

  std::vector<std::string> analyze_inputs;
  int top = 10;
  bool csv = false;
  auto* analyze = app.add_subcommand("analyze", "RSV histogram, redundancy and capacity");
  analyze->add_option("inputs", analyze_inputs, "JPEG files or directories")->required();
  analyze->add_option("--top", top, "histogram rows to print")->check(CLI::Range(1, 256));
  analyze->add_flag("--csv", csv, "one CSV row per file");
  AddCommon(analyze, &common, true);

  std::string input, payload, output, solution;
  auto* embed = app.add_subcommand("embed", "hide a payload");
  embed->add_option("input", input, "cover JPEG")->required();
  embed->add_option("--payload", payload, "payload file")->required();
  embed->add_option("-o,--output", output, "marked JPEG")->required();
  embed->add_option("--solution", solution, "force a peak selection, e.g. (1,1,{1})");
  AddCommon(embed, &common, true);

  std::string restored;
  auto* extract = app.add_subcommand("extract", "recover the payload and the original");
  extract->add_option("input", input, "marked JPEG")->required();
  extract->add_option("--payload", payload, "where to write the payload")->required();
  extract->add_option("-o,--output", restored, "where to write the restored JPEG");
  AddCommon(extract, &common, false);

  std::string original;
  auto* verify = app.add_subcommand("verify", "check a marked file against its original");
  verify->add_option("original", original)->required();
  verify->add_option("marked", input)->required();

  std::vector<std::string> report_inputs;
  int64_t payload_bits = 0;
  auto* report = app.add_subcommand("report", "CSV of capacity and size increments");
  report->add_option("inputs", report_inputs, "JPEG files or directories")->required();
  report->add_option("--payload-bits", payload_bits,
                     "payload size; default fills the capacity")
      ->check(CLI::NonNegativeNumber);
  AddCommon(report, &common, true);

  std::string export_path;
  bool standard = false;
  auto* tables = app.add_subcommand("tables", "print or export Huffman tables");
  tables->add_option("input", input, "JPEG file");
  tables->add_flag("--standard", standard, "use the built-in typical tables");
  tables->add_option("--export", export_path, "write the tables as DHT segments");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e, out, err);
    return status == 0 ? kExitOk : kExitFormat;
  }

  try {
    if (*analyze) return CmdAnalyze(analyze_inputs, common, top, csv, out, err);
    if (*embed) return CmdEmbed(input, payload, output, solution, common, out);
    if (*extract) return CmdExtract(input, payload, restored, common, out);
    if (*verify) return CmdVerify(original, input, out);
    if (*report) return CmdReport(report_inputs, payload_bits, common, out, err);
    if (*tables) {
      if (input.empty() && !standard) {
        err << "tables: give a JPEG file or --standard\n";
        return kExitFormat;
      }
      return CmdTables(input, export_path, standard, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return StatusFor(e.code());
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitFormat;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace gvm
