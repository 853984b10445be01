#include "rleseg/terminal_columns.hpp"

#include <string>

#include "rleseg/error.hpp"

namespace rleseg {

std::string_view to_string(Side side) noexcept {
  return side == Side::Left ? "left" : "right";
}

Side side_from_string(std::string_view name) {
  if (name == "left") return Side::Left;
  if (name == "right") return Side::Right;
  throw InvalidInput("unknown side '" + std::string(name) + "'");
}

TerminalColumn left_column(const RleDocument& doc, ScanStats* stats) {
  TerminalColumn col{Side::Left, doc.width(), {}};
  col.depths.reserve(doc.height());
  for (const auto& runs : doc.rows()) {
    count_read(stats);
    col.depths.push_back(runs.front());
  }
  return col;
}

TerminalColumn right_column(const RleDocument& doc, ScanStats* stats) {
  TerminalColumn col{Side::Right, doc.width(), {}};
  col.depths.reserve(doc.height());
  for (const auto& runs : doc.rows()) {
    // Stored rows carry no padding, but tolerate it: walk back past zeros.
    std::size_t k = runs.size();
    do {
      --k;
      count_read(stats);
    } while (k > 0 && runs[k] == 0);
    const bool white_slot = k % 2 == 0;
    col.depths.push_back(white_slot ? runs[k] : 0);
  }
  return col;
}

TerminalColumn terminal_column(const RleDocument& doc, Side side, ScanStats* stats) {
  return side == Side::Left ? left_column(doc, stats) : right_column(doc, stats);
}

}  // namespace rleseg
