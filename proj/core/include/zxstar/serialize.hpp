#pragma once

#include "zxstar/diagram.hpp"

#include <iosfwd>
#include <string>

namespace zxstar {

/// Line-based diagram format, version-headed:
///   zxstar-diagram v1
///   V <id> <B|Z|X> <phase_eighths>
///   E <id1> <id2> <P|H|S>
///   IN <id>...
///   OUT <id>...
///   SCALAR <a> <b> <c> <d> <k>
///   end
void write_diagram(std::ostream& os, const Diagram& d);
Diagram read_diagram(std::istream& is);

std::string diagram_to_string(const Diagram& d);
Diagram diagram_from_string(const std::string& text);

} // namespace zxstar
