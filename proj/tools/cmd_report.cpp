#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "artifact/datamodel.hpp"
#include "artifact/error.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

namespace {

using nlohmann::ordered_json;

std::string fmt_number(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

std::string fmt_percent(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", 100.0 * v);
  return buf;
}

// Monospace table with a header row; first column left-aligned, the rest
// right-aligned.
std::string render_grid(const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return "";
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) out << "  ";
      const std::string& cell = rows[r][c];
      if (c == 0)
        out << cell << std::string(widths[c] - cell.size(), ' ');
      else
        out << std::string(widths[c] - cell.size(), ' ') << cell;
    }
    out << "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c ? 2 : 0);
      out << std::string(total, '-') << "\n";
    }
  }
  return out.str();
}

std::string row_key(const ordered_json& row) {
  std::string key = row.value("system", "");
  if (row.contains("seed")) key += " s" + std::to_string(row.at("seed").get<int>());
  if (row.contains("epoch")) key += " e" + std::to_string(row.at("epoch").get<int>());
  return key;
}

std::string render_result_table(const ordered_json& j) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {"system"};
  for (const auto& c : j.at("columns")) header.push_back(c.get<std::string>());
  grid.push_back(header);
  for (const auto& row : j.at("rows")) {
    std::vector<std::string> cells = {row_key(row)};
    for (const auto& v : row.at("values")) cells.push_back(fmt_number(v.get<double>()));
    grid.push_back(std::move(cells));
  }
  return render_grid(grid);
}

// One row per system, mean±std in each cell.
std::string render_aggregate(const ordered_json& j) {
  const ordered_json& mean = j.at("mean");
  const ordered_json& stddev = j.at("std");
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {"system"};
  for (const auto& c : mean.at("columns")) header.push_back(c.get<std::string>());
  grid.push_back(header);
  for (std::size_t r = 0; r < mean.at("rows").size(); ++r) {
    const auto& mrow = mean.at("rows")[r];
    const auto& srow = stddev.at("rows")[r];
    std::vector<std::string> cells = {row_key(mrow)};
    for (std::size_t c = 0; c < mrow.at("values").size(); ++c)
      cells.push_back(fmt_number(mrow.at("values")[c].get<double>(), 4) + "±" +
                      fmt_number(srow.at("values")[c].get<double>(), 4));
    grid.push_back(std::move(cells));
  }
  return render_grid(grid);
}

std::string render_class_distribution(const ordered_json& j) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {"group"};
  for (const auto& label : j.at("label_order")) header.push_back(label.get<std::string>());
  header.push_back("support");
  grid.push_back(header);
  for (const auto& group : j.at("groups")) {
    std::vector<std::string> cells = {group.at("name").get<std::string>()};
    for (const auto& p : group.at("probabilities")) cells.push_back(fmt_percent(p.get<double>()));
    cells.push_back(std::to_string(group.at("support").get<std::size_t>()));
    grid.push_back(std::move(cells));
  }
  return render_grid(grid);
}

std::string render_filter_report(const ordered_json& j) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"rule", "count"});
  grid.push_back({"total_in", std::to_string(j.at("total_in").get<std::uint64_t>())});
  grid.push_back({"kept", std::to_string(j.at("total_out").get<std::uint64_t>())});
  for (const auto& item : j.at("rejected").items())
    grid.push_back({"rejected." + item.key(), std::to_string(item.value().get<std::uint64_t>())});
  return render_grid(grid);
}

std::string render_overlap_report(const ordered_json& j) {
  std::ostringstream out;
  for (const auto& block : j.at("datasets")) {
    out << block.at("name").get<std::string>() << "  (n=" << block.at("total").get<std::size_t>()
        << ", mean overlap " << fmt_number(block.at("overall_mean").get<double>()) << ")\n";
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"label/provenance/language", "count", "mean", "std"});
    for (const auto& cell : block.at("cells")) {
      grid.push_back({cell.at("label").get<std::string>() + "/" +
                          cell.at("provenance").get<std::string>() + "/" +
                          cell.at("language").get<std::string>(),
                      std::to_string(cell.at("count").get<std::size_t>()),
                      cell.contains("mean") ? fmt_number(cell.at("mean").get<double>()) : "-",
                      cell.contains("stddev") ? fmt_number(cell.at("stddev").get<double>()) : "-"});
    }
    out << render_grid(grid) << "\n";
  }
  return out.str();
}

std::string render_length_stats(const ordered_json& j) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"field/label/provenance", "count", "mean", "std", "p50", "p90", "p99"});
  for (const auto& cell : j.at("cells")) {
    grid.push_back({cell.at("field").get<std::string>() + "/" + cell.at("label").get<std::string>() +
                        "/" + cell.at("provenance").get<std::string>(),
                    std::to_string(cell.at("count").get<std::size_t>()),
                    fmt_number(cell.at("mean").get<double>(), 2),
                    fmt_number(cell.at("stddev").get<double>(), 2),
                    std::to_string(cell.at("p50").get<std::size_t>()),
                    std::to_string(cell.at("p90").get<std::size_t>()),
                    std::to_string(cell.at("p99").get<std::size_t>())});
  }
  return render_grid(grid);
}

std::string render_span_map(const ordered_json& j) {
  std::ostringstream out;
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"outcome", "count"});
  grid.push_back({"mapped", std::to_string(j.at("mapped_count").get<std::size_t>())});
  grid.push_back({"discarded", std::to_string(j.at("discarded").size())});
  grid.push_back({"fallback_source", std::to_string(j.at("fallback_source").size())});
  out << render_grid(grid);
  if (!j.at("discarded").empty()) {
    out << "\ndiscarded ids:";
    for (const auto& d : j.at("discarded"))
      out << " " << d.at("id").get<std::string>() << " (" << d.at("reason").get<std::string>()
          << ")";
    out << "\n";
  }
  if (!j.at("fallback_source").empty()) {
    out << "\nfallback ids:";
    for (const auto& id : j.at("fallback_source")) out << " " << id.get<std::string>();
    out << "\n";
  }
  return out.str();
}

std::string render_calibration(const ordered_json& j) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {"seed"};
  for (const auto& label : j.at("label_order"))
    header.push_back("b(" + label.get<std::string>() + ")");
  for (const auto& label : j.at("label_order"))
    header.push_back(label.get<std::string>() + "%");
  header.push_back("sweeps");
  header.push_back("converged");
  grid.push_back(header);
  for (const auto& block : j.at("per_seed")) {
    std::vector<std::string> cells = {std::to_string(block.at("seed").get<int>())};
    for (const auto& b : block.at("bias")) cells.push_back(fmt_number(b.get<double>()));
    for (const auto& p : block.at("achieved")) cells.push_back(fmt_percent(p.get<double>()));
    cells.push_back(std::to_string(block.at("sweeps_used").get<int>()));
    cells.push_back(block.at("converged").get<bool>() ? "yes" : "no");
    grid.push_back(std::move(cells));
  }
  return render_grid(grid);
}

std::string render_generic(const ordered_json& j) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"key", "value"});
  for (const auto& item : j.items()) grid.push_back({item.key(), item.value().dump()});
  return render_grid(grid);
}

std::string render(const ordered_json& j) {
  const std::string type = j.value("type", "");
  if (type == "result_table") return render_result_table(j);
  if (type == "aggregate") return render_aggregate(j);
  if (type == "class_distribution") return render_class_distribution(j);
  if (type == "filter_report") return render_filter_report(j);
  if (type == "overlap_report") return render_overlap_report(j);
  if (type == "length_stats") return render_length_stats(j);
  if (type == "span_map_report") return render_span_map(j);
  if (type == "calibration") return render_calibration(j);
  return render_generic(j);
}

}  // namespace

void register_cmd_report(CLI::App& app, const GlobalOptions&) {
  auto input = std::make_shared<std::string>();
  auto out = std::make_shared<std::string>();
  CLI::App* cmd = app.add_subcommand("report", "Render a JSON report as an aligned text table");
  cmd->add_option("input", *input, "Report JSON file")->required();
  cmd->add_option("--out", *out, "Write the table here instead of stdout");
  cmd->callback([input, out]() {
    RunScope scope("report");
    scope.input(*input);
    ordered_json j = ordered_json::parse(read_file_bytes(*input), nullptr, false);
    if (j.is_discarded()) throw ValidationError(*input + ": malformed JSON");
    const std::string text = render(j);
    if (out->empty()) {
      std::cout << text;
    } else {
      atomic_write_file(*out, text);
      scope.output(*out);
      scope.finish(*out);
    }
  });
}

}  // namespace artifact::cli
