#pragma once
// Sorted, deduplicated set of normalized tokens for one record field.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace homonym {

class WordSet {
public:
    using const_iterator = std::vector<std::string>::const_iterator;

    WordSet() = default;
    // Sorts, drops empty tokens and duplicates.
    explicit WordSet(std::vector<std::string> words);

    void insert(std::string word);
    bool contains(std::string_view word) const;

    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    const_iterator begin() const { return words_.begin(); }
    const_iterator end() const { return words_.end(); }
    const std::vector<std::string>& words() const { return words_; }

    // |this ∩ other| by a linear merge.
    std::size_t common_with(const WordSet& other) const;

    std::string join(std::string_view sep) const;

    bool operator==(const WordSet&) const = default;

private:
    std::vector<std::string> words_;
};

} // namespace homonym
