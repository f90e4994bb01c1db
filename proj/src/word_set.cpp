#include "homonym/word_set.hpp"

#include <algorithm>

namespace homonym {

WordSet::WordSet(std::vector<std::string> words) : words_(std::move(words)) {
    std::erase_if(words_, [](const std::string& w) { return w.empty(); });
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

void WordSet::insert(std::string word) {
    if (word.empty()) return;
    auto it = std::lower_bound(words_.begin(), words_.end(), word);
    if (it != words_.end() && *it == word) return;
    words_.insert(it, std::move(word));
}

bool WordSet::contains(std::string_view word) const {
    auto it = std::lower_bound(words_.begin(), words_.end(), word,
                               [](const std::string& a, std::string_view b) { return a < b; });
    return it != words_.end() && *it == word;
}

std::size_t WordSet::common_with(const WordSet& other) const {
    std::size_t n = 0;
    auto a = words_.begin();
    auto b = other.words_.begin();
    while (a != words_.end() && b != other.words_.end()) {
        const int c = a->compare(*b);
        if (c == 0) {
            ++n;
            ++a;
            ++b;
        } else if (c < 0) {
            ++a;
        } else {
            ++b;
        }
    }
    return n;
}

std::string WordSet::join(std::string_view sep) const {
    std::string out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (i) out += sep;
        out += words_[i];
    }
    return out;
}

} // namespace homonym
