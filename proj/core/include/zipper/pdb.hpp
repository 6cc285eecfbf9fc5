// Molecular model (Structure -> Chain -> Residue -> Atom), fixed-column PDB
// reading and writing, and atom lookup by CHAIN.RESNAMESEQ.ATOM selectors.

#ifndef ZIPPER_PDB_HPP_
#define ZIPPER_PDB_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "vec3.hpp"

namespace zipper {

struct Atom {
  int serial = 1;
  std::string name;        // alignment stripped, e.g. "CB"
  char alt_loc = ' ';      // ' ' or 'A'
  Vec3 pos;
  double occupancy = 1.0;
  double temp_factor = 0.0;
  std::string element;     // trimmed, e.g. "C"
  bool het = false;        // HETATM record

  bool operator==(const Atom&) const = default;
};

struct Residue {
  int seq = 0;
  std::string name;        // 3-letter, e.g. "ALA"
  std::vector<Atom> atoms;

  const Atom* find_atom(std::string_view atom_name) const;
  Atom* find_atom(std::string_view atom_name);
  bool operator==(const Residue&) const = default;
};

struct Chain {
  char id = 'A';
  std::vector<Residue> residues;

  const Residue* find_residue(int seq) const;
  Residue* find_residue(int seq);
  std::size_t atom_count() const;
  bool operator==(const Chain&) const = default;
};

struct Structure {
  std::vector<std::string> header;  // opaque non-coordinate records
  std::vector<Chain> chains;

  const Chain* find_chain(char id) const;
  Chain* find_chain(char id);
  std::size_t atom_count() const;
  bool operator==(const Structure&) const = default;
};

/// Identity of an atom inside a Structure, used in reports.
struct AtomSite {
  char chain = ' ';
  int res_seq = 0;
  std::string res_name;
  std::string atom_name;

  std::string str() const;  // "A.ALA3.CB"
  bool operator==(const AtomSite&) const = default;
  auto operator<=>(const AtomSite&) const = default;
};

/// Textual form CHAIN.RESNAMESEQ.ATOM, e.g. A.ALA3.CB.
struct AtomSelector {
  char chain = ' ';
  std::string res_name;
  int res_seq = 0;
  std::string atom_name;

  static AtomSelector parse(std::string_view text);
  std::string str() const;
  bool operator==(const AtomSelector&) const = default;
};

/// Parses ATOM/HETATM/TER/END records. Other records are kept verbatim in
/// Structure::header. Throws ParseError (with line number) or StructureError.
Structure parse_pdb(std::string_view text);
Structure read_pdb_file(const std::string& path);

/// Emits header lines, then ATOM/HETATM records with sequential serials,
/// TER after each chain and a final END. Throws EmissionError for values that
/// do not fit the fixed columns.
std::string write_pdb(const Structure& st);
void write_pdb_file(const Structure& st, const std::string& path);

/// Sets serials to the numbers write_pdb would emit (TER records consume one).
void assign_serials(Structure& st);

/// Formats v as %8.3f-style text with decimal round-half-away-from-zero.
std::string format_fixed(double v, int width, int decimals);

const Atom& select_atom(const Structure& st, const AtomSelector& sel);
Atom& select_atom(Structure& st, const AtomSelector& sel);

/// Pads a stripped atom name to the 4-column PDB convention.
std::string align_atom_name(const std::string& name, const std::string& element);

} // namespace zipper

#endif
