// Bell scenario shape: players, labelled inputs, per-input output alphabets and
// the admissible input tuples.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sdl {

using InputTuple = std::vector<std::size_t>;
using OutputTuple = std::vector<std::size_t>;

class Scenario {
 public:
  Scenario() = default;
  // An empty tuple list means the full product of input sets.
  Scenario(std::vector<std::vector<std::string>> inputs,
           std::vector<std::vector<std::vector<std::string>>> outputs,
           std::vector<InputTuple> tuples = {});

  std::size_t players() const { return inputs_.size(); }
  const std::vector<std::string>& inputs(std::size_t player) const { return inputs_.at(player); }
  const std::vector<std::string>& outputs(std::size_t player, std::size_t x) const { return outputs_.at(player).at(x); }
  std::size_t num_outputs(std::size_t player, std::size_t x) const { return outputs_.at(player).at(x).size(); }

  const std::vector<InputTuple>& tuples() const { return tuples_; }
  std::size_t num_tuples() const { return tuples_.size(); }
  bool full_product() const { return full_product_; }
  std::optional<std::size_t> tuple_index(const InputTuple& x) const;

  std::size_t block_size(std::size_t t) const { return block_size_[t]; }
  std::size_t offset(std::size_t t) const { return offset_[t]; }
  std::size_t size() const { return total_; }

  // Output tuples are numbered with player 0 most significant.
  OutputTuple decode(std::size_t t, std::size_t k) const;
  std::size_t encode(std::size_t t, const OutputTuple& a) const;

  std::size_t input_index(std::size_t player, const std::string& label) const;
  std::size_t output_index(std::size_t player, std::size_t x, const std::string& label) const;

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.inputs_ == b.inputs_ && a.outputs_ == b.outputs_ && a.tuples_ == b.tuples_;
  }
  friend bool operator!=(const Scenario& a, const Scenario& b) { return !(a == b); }

 private:
  std::vector<std::vector<std::string>> inputs_;
  std::vector<std::vector<std::vector<std::string>>> outputs_;
  std::vector<InputTuple> tuples_;
  std::map<InputTuple, std::size_t> tuple_lookup_;
  std::vector<std::size_t> block_size_, offset_;
  std::size_t total_ = 0;
  bool full_product_ = true;
};

}  // namespace sdl
