#pragma once

// CSV batch scoring. Input needs a header with id, d and t columns (extra
// columns are carried through unchanged). LF or CRLF line endings are
// accepted; output always uses LF.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "tdtsw/errors.hpp"
#include "tdtsw/inference.hpp"
#include "tdtsw/numeric_text.hpp"

namespace tdtsw::batch {

class CsvError : public Error {
 public:
  CsvError(std::size_t line, std::size_t column, const std::string& message)
      : Error(message), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct Field {
  std::string text;
  std::size_t column;
};

struct Record {
  std::size_t line;
  std::vector<Field> fields;
};

// RFC 4180 style: fields may be double-quoted, "" escapes a quote. Quoted
// fields may not span lines.
inline std::vector<Record> read_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<Record> records;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_number;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    Record record{line_number, {}};
    std::size_t i = 0;
    while (true) {
      Field field{{}, i + 1};
      if (i < line.size() && line[i] == '"') {
        ++i;
        bool closed = false;
        while (i < line.size()) {
          if (line[i] == '"') {
            if (i + 1 < line.size() && line[i + 1] == '"') {
              field.text += '"';
              i += 2;
              continue;
            }
            closed = true;
            ++i;
            break;
          }
          field.text += line[i++];
        }
        if (!closed) throw CsvError(line_number, field.column, "unterminated quoted field");
        if (i < line.size() && line[i] != ',') throw CsvError(line_number, i + 1, "expected ',' after quoted field");
      } else {
        while (i < line.size() && line[i] != ',') field.text += line[i++];
      }
      record.fields.push_back(std::move(field));
      if (i >= line.size()) break;
      ++i;  // comma
      if (i == line.size()) {
        record.fields.push_back({{}, i + 1});
        break;
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

inline std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct BatchRow {
  std::string id;
  double d;
  double t;
  std::vector<std::string> raw;  // original fields, in header order
};

struct BatchInput {
  std::vector<std::string> header;
  std::vector<BatchRow> rows;
};

inline BatchInput parse_rows(std::string_view text) {
  auto records = read_csv(text);
  if (records.empty()) throw CsvError(1, 1, "missing header row (expected id,d,t)");
  BatchInput input;
  const Record& head = records.front();
  for (const auto& f : head.fields) input.header.push_back(f.text);
  auto column_of = [&](std::string_view name) -> std::size_t {
    auto it = std::find(input.header.begin(), input.header.end(), name);
    if (it == input.header.end()) {
      throw CsvError(head.line, 1, "header is missing required column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - input.header.begin());
  };
  const std::size_t id_col = column_of("id");
  const std::size_t d_col = column_of("d");
  const std::size_t t_col = column_of("t");

  for (std::size_t r = 1; r < records.size(); ++r) {
    const Record& rec = records[r];
    if (rec.fields.size() != input.header.size()) {
      throw CsvError(rec.line, 1, "expected " + std::to_string(input.header.size()) + " fields, found " +
                                      std::to_string(rec.fields.size()));
    }
    BatchRow row;
    row.id = rec.fields[id_col].text;
    if (row.id.empty()) throw CsvError(rec.line, rec.fields[id_col].column, "empty id");
    auto real = [&](std::size_t col, std::string_view name) {
      auto value = parse_real(rec.fields[col].text);
      if (!value || !std::isfinite(*value)) {
        throw CsvError(rec.line, rec.fields[col].column,
                       "invalid " + std::string(name) + " value '" + rec.fields[col].text + "'");
      }
      return *value;
    };
    row.d = real(d_col, "d");
    row.t = real(t_col, "t");
    for (const auto& f : rec.fields) row.raw.push_back(f.text);
    input.rows.push_back(std::move(row));
  }
  return input;
}

inline std::string lowercase(std::string text) {
  std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
  return text;
}

// Appended columns: <out>_<label> per output label, <out>_crisp, <out>_label, color.
inline std::vector<std::string> appended_columns(const RuleBase& rulebase) {
  const std::string prefix = lowercase(rulebase.output().name()) + "_";
  std::vector<std::string> cols;
  for (const auto& label : rulebase.output().labels()) cols.push_back(prefix + lowercase(label));
  cols.push_back(prefix + "crisp");
  cols.push_back(prefix + "label");
  cols.push_back("color");
  return cols;
}

inline InferenceResult score_row(const RuleBase& rulebase, const BatchRow& row, DefuzzMethod method) {
  return infer(rulebase, {{"D", row.d}, {"T", row.t}}, method);
}

/// Scores every row (optionally on several threads) and renders the output
/// CSV in input order.
inline std::string score_csv(const RuleBase& rulebase, const BatchInput& input, DefuzzMethod method,
                             unsigned jobs = 1) {
  std::vector<std::optional<InferenceResult>> results(input.rows.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, input.rows.size()))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < input.rows.size(); ++i) results[i] = score_row(rulebase, input.rows[i], method);
  } else {
    std::vector<std::exception_ptr> failures(jobs);
    {
      std::vector<std::jthread> pool;
      for (unsigned id = 0; id < jobs; ++id) {
        pool.emplace_back([&, id] {
          try {
            for (std::size_t i = id; i < input.rows.size(); i += jobs) {
              results[i] = score_row(rulebase, input.rows[i], method);
            }
          } catch (...) {
            failures[id] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  std::string out;
  auto write_line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_field(fields[i]);
    }
    out += '\n';
  };
  std::vector<std::string> header = input.header;
  for (auto& c : appended_columns(rulebase)) header.push_back(std::move(c));
  write_line(header);
  for (std::size_t i = 0; i < input.rows.size(); ++i) {
    const InferenceResult& r = *results[i];
    std::vector<std::string> fields = input.rows[i].raw;
    for (double degree : r.aggregated.degrees()) fields.push_back(format_shortest(degree));
    fields.push_back(format_shortest(r.crisp));
    fields.push_back(r.label);
    fields.emplace_back(to_string(r.color));
    write_line(fields);
  }
  return out;
}

}  // namespace tdtsw::batch
