// Boolean function ASTs: named families, explicit tables, block composition
// and self-iteration, plus the textual function-spec parser.
//
// Spec grammar:  term ("o" term)*   with  term = NAME[:p1,p2,...][^d]
// Composition f o g feeds g on consecutive blocks of the input, first block
// to the first outer variable.
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tbf/bitstring.hpp"
#include "tbf/truthtable.hpp"

namespace tbf {

class BooleanFunction;
using FnPtr = std::shared_ptr<const BooleanFunction>;

class BooleanFunction {
 public:
  virtual ~BooleanFunction() = default;
  virtual int arity() const = 0;
  // x points at arity() bytes holding 0/1.
  virtual int eval_bits(const std::uint8_t* x) const = 0;
  virtual std::string describe() const = 0;

  int eval(const BitString& x) const;
};

// Named families: AND:n OR:n PARITY:n MAJORITY:n NAND XNOR NW
// RUB:k GSS1:n GSS2:t KSUM:k,n,w
FnPtr make_named(const std::string& name, const std::vector<long long>& params = {});
FnPtr make_table(TruthTable tt);
FnPtr compose(FnPtr f, FnPtr g);
FnPtr iterate(FnPtr f, int depth);
FnPtr parse_function_spec(std::string_view spec);

TruthTable truth_table(const BooleanFunction& f);  // arity <= 24
TruthTable truth_table(const FnPtr& f);

}  // namespace tbf
