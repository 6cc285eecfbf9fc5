#include "zipper/pdb.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zipper/error.hpp"

namespace zipper {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// 1-based inclusive columns, clipped to the line length.
std::string_view columns(std::string_view line, std::size_t first, std::size_t last) {
  if (line.size() < first)
    return {};
  return line.substr(first - 1, std::min(last, line.size()) - first + 1);
}

bool parse_int(std::string_view field, int& out) {
  field = trim(field);
  if (field.empty())
    return false;
  if (field.front() == '+')
    field.remove_prefix(1);
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && p == field.data() + field.size();
}

bool parse_real(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty())
    return false;
  if (field.front() == '+')
    field.remove_prefix(1);
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && p == field.data() + field.size() && std::isfinite(out);
}

bool is_record(std::string_view line, std::string_view name) {
  if (line.substr(0, name.size()) != name)
    return false;
  return trim(line.substr(name.size(), 6 - std::min<std::size_t>(6, name.size()))).empty();
}

bool is_end_record(std::string_view line) {
  return trim(line) == "END" || (line.substr(0, 3) == "END" &&
                                  (line.size() == 3 || line[3] == ' '));
}

std::string infer_element(std::string_view name) {
  for (char c : name)
    if (std::isalpha(static_cast<unsigned char>(c)))
      return std::string(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return {};
}

struct Builder {
  Structure st;
  Chain* chain = nullptr;   // open chain; null after TER

  void add(char chain_id, int res_seq, std::string res_name, Atom atom, std::size_t line_no) {
    if (!chain || chain->id != chain_id) {
      chain = st.find_chain(chain_id);
      if (!chain) {
        st.chains.push_back(Chain{chain_id, {}});
        chain = &st.chains.back();
      }
    }
    Residue* res = chain->residues.empty() ? nullptr : &chain->residues.back();
    if (!res || res->seq != res_seq) {
      if (res && res_seq < res->seq)
        throw StructureError("line " + std::to_string(line_no) + ": residue " +
                             std::to_string(res_seq) + " of chain " + chain_id +
                             " out of order");
      chain->residues.push_back(Residue{res_seq, std::move(res_name), {}});
      res = &chain->residues.back();
    } else if (res->name != res_name) {
      throw StructureError("line " + std::to_string(line_no) + ": residue " +
                           std::to_string(res_seq) + " of chain " + chain_id +
                           " is both " + res->name + " and " + res_name);
    }
    for (const Atom& a : res->atoms)
      if (a.name == atom.name && a.alt_loc == atom.alt_loc)
        throw StructureError("line " + std::to_string(line_no) + ": duplicate atom " +
                             std::string(1, chain_id) + "." + res->name +
                             std::to_string(res_seq) + "." + atom.name);
    res->atoms.push_back(std::move(atom));
  }
};

void parse_atom_line(Builder& b, std::string_view line, std::size_t n) {
  if (line.size() < 54)
    throw ParseError(n, "truncated coordinate record (needs columns 1-54, got " +
                            std::to_string(line.size()) + ")");
  Atom atom;
  atom.het = line.substr(0, 6) == "HETATM";
  if (!parse_int(columns(line, 7, 11), atom.serial) || atom.serial < 1)
    throw ParseError(n, "malformed serial number '" + std::string(columns(line, 7, 11)) + "'");
  atom.name = std::string(trim(columns(line, 13, 16)));
  if (atom.name.empty())
    throw ParseError(n, "empty atom name");
  atom.alt_loc = line[16];
  if (atom.alt_loc != ' ' && atom.alt_loc != 'A')
    throw ParseError(n, std::string("unsupported alternate location '") + atom.alt_loc + "'");
  std::string res_name(trim(columns(line, 18, 20)));
  if (res_name.empty())
    throw ParseError(n, "empty residue name");
  char chain_id = line[21];
  int res_seq = 0;
  if (!parse_int(columns(line, 23, 26), res_seq))
    throw ParseError(n, "malformed residue number '" + std::string(columns(line, 23, 26)) + "'");
  if (line[26] != ' ')
    throw ParseError(n, "insertion codes are not supported");
  static const char* axis[] = {"x", "y", "z"};
  double xyz[3];
  for (int k = 0; k < 3; ++k)
    if (!parse_real(columns(line, 31 + 8 * k, 38 + 8 * k), xyz[k]))
      throw ParseError(n, std::string("malformed ") + axis[k] + " coordinate '" +
                              std::string(columns(line, 31 + 8 * k, 38 + 8 * k)) + "'");
  atom.pos = {xyz[0], xyz[1], xyz[2]};
  std::string_view occ = trim(columns(line, 55, 60));
  if (!occ.empty() && !parse_real(occ, atom.occupancy))
    throw ParseError(n, "malformed occupancy '" + std::string(occ) + "'");
  std::string_view bfac = trim(columns(line, 61, 66));
  if (!bfac.empty() && !parse_real(bfac, atom.temp_factor))
    throw ParseError(n, "malformed temperature factor '" + std::string(bfac) + "'");
  atom.element = std::string(trim(columns(line, 77, 78)));
  if (atom.element.empty())
    atom.element = infer_element(atom.name);
  b.add(chain_id, res_seq, std::move(res_name), std::move(atom), n);
}

std::string fit(double v, int width, int decimals, const char* what) {
  std::string s = format_fixed(v, width, decimals);
  if (static_cast<int>(s.size()) > width)
    throw EmissionError(std::string(what) + " " + s + " does not fit in F" +
                        std::to_string(width) + "." + std::to_string(decimals));
  return s;
}

} // namespace

const Atom* Residue::find_atom(std::string_view atom_name) const {
  for (const Atom& a : atoms)
    if (a.name == atom_name)
      return &a;
  return nullptr;
}

Atom* Residue::find_atom(std::string_view atom_name) {
  return const_cast<Atom*>(std::as_const(*this).find_atom(atom_name));
}

const Residue* Chain::find_residue(int seq) const {
  for (const Residue& r : residues)
    if (r.seq == seq)
      return &r;
  return nullptr;
}

Residue* Chain::find_residue(int seq) {
  return const_cast<Residue*>(std::as_const(*this).find_residue(seq));
}

std::size_t Chain::atom_count() const {
  std::size_t n = 0;
  for (const Residue& r : residues)
    n += r.atoms.size();
  return n;
}

const Chain* Structure::find_chain(char id) const {
  for (const Chain& c : chains)
    if (c.id == id)
      return &c;
  return nullptr;
}

Chain* Structure::find_chain(char id) {
  return const_cast<Chain*>(std::as_const(*this).find_chain(id));
}

std::size_t Structure::atom_count() const {
  std::size_t n = 0;
  for (const Chain& c : chains)
    n += c.atom_count();
  return n;
}

std::string AtomSite::str() const {
  return std::string(1, chain) + "." + res_name + std::to_string(res_seq) + "." + atom_name;
}

AtomSelector AtomSelector::parse(std::string_view text) {
  auto fail = [&](const char* why) {
    return SelectorError("malformed atom selector '" + std::string(text) + "': " + why);
  };
  std::size_t d1 = text.find('.');
  std::size_t d2 = d1 == std::string_view::npos ? d1 : text.find('.', d1 + 1);
  if (d2 == std::string_view::npos || text.find('.', d2 + 1) != std::string_view::npos)
    throw fail("expected CHAIN.RESNAMESEQ.ATOM");
  std::string_view chain = text.substr(0, d1);
  std::string_view res = text.substr(d1 + 1, d2 - d1 - 1);
  std::string_view atom = text.substr(d2 + 1);
  if (chain.size() != 1 || std::isspace(static_cast<unsigned char>(chain[0])))
    throw fail("chain id must be one character");
  std::size_t k = 0;
  while (k < res.size() && std::isalpha(static_cast<unsigned char>(res[k])))
    ++k;
  if (k == 0 || k > 3)
    throw fail("residue name must be 1-3 letters");
  AtomSelector sel;
  sel.chain = chain[0];
  sel.res_name = std::string(res.substr(0, k));
  std::string_view digits = res.substr(k);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw fail("residue number must be a positive integer");
  if (!parse_int(digits, sel.res_seq) || sel.res_seq < 1)
    throw fail("residue number must be >= 1");
  if (atom.empty() || atom.size() > 4)
    throw fail("atom name must be 1-4 characters");
  sel.atom_name = std::string(atom);
  return sel;
}

std::string AtomSelector::str() const {
  return std::string(1, chain) + "." + res_name + std::to_string(res_seq) + "." + atom_name;
}

Structure parse_pdb(std::string_view text) {
  Builder b;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (is_record(line, "ATOM") || is_record(line, "HETATM")) {
      parse_atom_line(b, line, line_no);
    } else if (is_record(line, "TER")) {
      b.chain = nullptr;
    } else if (is_end_record(line)) {
      break;
    } else {
      b.st.header.emplace_back(line);
    }
  }
  return std::move(b.st);
}

Structure read_pdb_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw NotFoundError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pdb(ss.str());
}

std::string format_fixed(double v, int width, int decimals) {
  if (!std::isfinite(v))
    throw EmissionError("non-finite value");
  char buf[512];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  std::string s(buf, res.ptr);
  bool negative = !s.empty() && s[0] == '-';
  if (negative)
    s.erase(0, 1);
  std::size_t dot = s.find('.');
  std::string ipart = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fpart = dot == std::string::npos ? "" : s.substr(dot + 1);
  bool round_up = static_cast<int>(fpart.size()) > decimals && fpart[decimals] >= '5';
  fpart.resize(decimals, '0');
  std::string digits = ipart + fpart;
  if (round_up) {
    int k = static_cast<int>(digits.size()) - 1;
    while (k >= 0 && digits[k] == '9')
      digits[k--] = '0';
    if (k < 0)
      digits.insert(digits.begin(), '1');
    else
      ++digits[k];
  }
  ipart = digits.substr(0, digits.size() - decimals);
  fpart = digits.substr(digits.size() - decimals);
  if (std::all_of(digits.begin(), digits.end(), [](char c) { return c == '0'; }))
    negative = false;
  std::string out = (negative ? "-" : "") + ipart + (decimals > 0 ? "." + fpart : "");
  if (static_cast<int>(out.size()) < width)
    out.insert(0, width - out.size(), ' ');
  return out;
}

std::string align_atom_name(const std::string& name, const std::string& element) {
  if (name.empty() || name.size() > 4)
    throw EmissionError("atom name '" + name + "' must have 1-4 characters");
  if (name.size() == 4 || element.size() == 2)
    return name + std::string(4 - name.size(), ' ');
  return " " + name + std::string(3 - name.size(), ' ');
}

void assign_serials(Structure& st) {
  int n = 1;
  for (Chain& c : st.chains) {
    if (c.residues.empty())
      continue;
    for (Residue& r : c.residues)
      for (Atom& a : r.atoms)
        a.serial = n++;
    ++n;  // TER
  }
}

std::string write_pdb(const Structure& st) {
  std::string out;
  for (const std::string& h : st.header) {
    out += h;
    out += '\n';
  }
  int serial = 1;
  char buf[128];
  for (const Chain& c : st.chains) {
    if (c.residues.empty())
      continue;
    for (const Residue& r : c.residues) {
      if (r.name.empty() || r.name.size() > 3)
        throw EmissionError("residue name '" + r.name + "' must have 1-3 characters");
      if (r.seq < -999 || r.seq > 9999)
        throw EmissionError("residue number " + std::to_string(r.seq) + " does not fit");
      for (const Atom& a : r.atoms) {
        if (serial > 99999)
          throw EmissionError("more than 99999 records");
        if (a.element.size() > 2)
          throw EmissionError("element '" + a.element + "' longer than 2 characters");
        std::string x = fit(a.pos.x, 8, 3, "x coordinate");
        std::string y = fit(a.pos.y, 8, 3, "y coordinate");
        std::string z = fit(a.pos.z, 8, 3, "z coordinate");
        std::string occ = fit(a.occupancy, 6, 2, "occupancy");
        std::string bf = fit(a.temp_factor, 6, 2, "temperature factor");
        std::snprintf(buf, sizeof buf, "%-6s%5d %4s%c%3s %c%4d    %s%s%s%s%s          %2s\n",
                      a.het ? "HETATM" : "ATOM", serial, align_atom_name(a.name, a.element).c_str(),
                      a.alt_loc, r.name.c_str(), c.id, r.seq, x.c_str(), y.c_str(), z.c_str(),
                      occ.c_str(), bf.c_str(), a.element.c_str());
        out += buf;
        ++serial;
      }
    }
    const Residue& last = c.residues.back();
    std::snprintf(buf, sizeof buf, "TER   %5d      %3s %c%4d\n", serial, last.name.c_str(), c.id,
                  last.seq);
    out += buf;
    ++serial;
  }
  out += "END\n";
  return out;
}

void write_pdb_file(const Structure& st, const std::string& path) {
  std::string text = write_pdb(st);
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path);
  out << text;
  if (!out)
    throw Error("failed writing " + path);
}

const Atom& select_atom(const Structure& st, const AtomSelector& sel) {
  const Chain* chain = st.find_chain(sel.chain);
  if (!chain)
    throw NotFoundError("atom " + sel.str() + " not found: no chain " + sel.chain);
  const Residue* res = chain->find_residue(sel.res_seq);
  if (!res)
    throw NotFoundError("atom " + sel.str() + " not found: no residue " +
                        std::to_string(sel.res_seq) + " in chain " + sel.chain);
  if (res->name != sel.res_name)
    throw MismatchError("atom " + sel.str() + ": residue " + std::to_string(sel.res_seq) +
                        " of chain " + sel.chain + " is " + res->name);
  const Atom* atom = res->find_atom(sel.atom_name);
  if (!atom)
    throw NotFoundError("atom " + sel.str() + " not found: " + res->name +
                        std::to_string(res->seq) + " has no atom " + sel.atom_name);
  return *atom;
}

Atom& select_atom(Structure& st, const AtomSelector& sel) {
  return const_cast<Atom&>(select_atom(std::as_const(st), sel));
}

} // namespace zipper
