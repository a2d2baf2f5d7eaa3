#pragma once

// Serializers for inference traces and scenario grids: JSON, plain-text
// tables and an SVG heatmap of the scenario grid.

#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tdtsw/inference.hpp"
#include "tdtsw/numeric_text.hpp"

namespace tdtsw::report {

using Json = nlohmann::ordered_json;

inline Json degrees_json(const MembershipVector& v) {
  Json out = Json::object();
  for (std::size_t i = 0; i < v.size(); ++i) out[v.labels()[i]] = v.degrees()[i];
  return out;
}

// Keys: inputs, fuzzified, firings, aggregated, crisp, label, color.
inline Json to_json(const InferenceResult& r) {
  Json out = Json::object();
  Json inputs = Json::object();
  for (const auto& in : r.inputs) inputs[in.variable] = in.value;
  Json fuzzified = Json::object();
  for (const auto& f : r.fuzzified) fuzzified[f.variable] = degrees_json(f.degrees);
  Json firings = Json::object();
  for (const auto& f : r.firings) firings[f.rule_id] = f.degree;
  out["inputs"] = std::move(inputs);
  out["fuzzified"] = std::move(fuzzified);
  out["firings"] = std::move(firings);
  out["aggregated"] = degrees_json(r.aggregated);
  out["crisp"] = r.crisp;
  out["label"] = r.label;
  out["color"] = std::string(to_string(r.color));
  return out;
}

inline Json to_json(const ScenarioTable& table) {
  Json cells = Json::array();
  for (const auto& cell : table.cells) {
    Json c = Json::object();
    c["scenario"] = cell.id;
    c[table.row_variable] = cell.row_label;
    c[table.column_variable] = cell.column_label;
    c["result"] = to_json(cell.result);
    cells.push_back(std::move(c));
  }
  Json out = Json::object();
  out["rows"] = table.row_variable;
  out["columns"] = table.column_variable;
  out["cells"] = std::move(cells);
  return out;
}

inline std::string fixed3(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", value);
  return buffer;
}

inline std::string degrees_text(const MembershipVector& v) {
  std::string text;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) text += ' ';
    text += v.labels()[i] + "=" + format_shortest(v.degrees()[i]);
  }
  return text;
}

inline std::string to_table(const InferenceResult& r, std::string_view output_name) {
  std::ostringstream out;
  out << "inputs:";
  for (const auto& in : r.inputs) out << ' ' << in.variable << '=' << format_shortest(in.value);
  out << '\n';
  for (const auto& f : r.fuzzified) out << "fuzzified " << f.variable << ": " << degrees_text(f.degrees) << '\n';
  out << "firings:";
  for (const auto& f : r.firings) out << ' ' << f.rule_id << '=' << format_shortest(f.degree);
  out << '\n';
  out << "aggregated " << output_name << ": " << degrees_text(r.aggregated) << '\n';
  out << "crisp: " << format_shortest(r.crisp) << '\n';
  out << "label: " << r.label << '\n';
  out << "color: " << to_string(r.color) << '\n';
  return out.str();
}

inline std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

inline std::string to_table(const ScenarioTable& table, std::string_view output_name) {
  std::ostringstream out;
  out << pad("scenario", 10) << pad(table.row_variable, 10) << pad(table.column_variable, 10)
      << pad(std::string(output_name), 10) << pad("crisp", 8) << "color\n";
  for (const auto& cell : table.cells) {
    out << pad(cell.id, 10) << pad(cell.row_label, 10) << pad(cell.column_label, 10) << pad(cell.result.label, 10)
        << pad(fixed3(cell.result.crisp), 8) << to_string(cell.result.color) << '\n';
  }
  return out.str();
}

inline std::string_view fill_for(Color color) {
  switch (color) {
    case Color::red:
      return "#d62728";
    case Color::orange:
      return "#ff7f0e";
    case Color::green:
      return "#2ca02c";
  }
  return "#d62728";
}

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

/// Scenario heatmap: rows are labels of the first input, columns labels of the
/// second; each cell shows scenario id, output label and crisp score.
inline std::string to_svg(const ScenarioTable& table, std::string_view output_name) {
  constexpr int cell = 140;
  constexpr int left = 110;
  constexpr int top = 80;
  const int rows = static_cast<int>(table.row_labels.size());
  const int cols = static_cast<int>(table.column_labels.size());
  const int width = left + cols * cell + 20;
  const int height = top + rows * cell + 20;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<style>text { font-family: sans-serif; text-anchor: middle; }</style>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n"
      << "<text x=\"" << width / 2 << "\" y=\"26\" font-size=\"18\">" << xml_escape(output_name) << " by scenario ("
      << xml_escape(table.row_variable) << " rows, " << xml_escape(table.column_variable) << " columns)</text>\n";
  for (int c = 0; c < cols; ++c) {
    svg << "<text x=\"" << left + c * cell + cell / 2 << "\" y=\"" << top - 12 << "\" font-size=\"14\">"
        << xml_escape(table.column_variable) << ' ' << xml_escape(table.column_labels[c]) << "</text>\n";
  }
  for (int r = 0; r < rows; ++r) {
    svg << "<text x=\"" << left / 2 << "\" y=\"" << top + r * cell + cell / 2 + 5 << "\" font-size=\"14\">"
        << xml_escape(table.row_variable) << ' ' << xml_escape(table.row_labels[r]) << "</text>\n";
  }
  for (std::size_t i = 0; i < table.cells.size(); ++i) {
    const auto& c = table.cells[i];
    const int x = left + static_cast<int>(i % cols) * cell;
    const int y = top + static_cast<int>(i / cols) * cell;
    svg << "<g>\n"
        << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
        << fill_for(c.result.color) << "\" stroke=\"#333333\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + 40 << "\" font-size=\"16\" font-weight=\"bold\">"
        << xml_escape(c.id) << "</text>\n"
        << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + 72 << "\" font-size=\"16\">" << xml_escape(c.result.label)
        << "</text>\n"
        << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + 102 << "\" font-size=\"14\">" << fixed3(c.result.crisp)
        << "</text>\n"
        << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tdtsw::report
