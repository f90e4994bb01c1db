#include "homonym/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <stdexcept>

#include "homonym/ingest.hpp"

namespace homonym {

namespace {

// Disjoint index ranges so vocabularies of different fields never collide.
constexpr std::uint64_t kTitleBase = 0;
constexpr std::uint64_t kAddressBase = 1'000'000;
constexpr std::uint64_t kKeywordBase = 2'000'000;
constexpr std::uint64_t kSurnameBase = 3'000'000;
constexpr std::uint64_t kSubjectBase = 4'000'000;
constexpr std::uint64_t kJournalBase = 5'000'000;
constexpr std::uint64_t kSurnameSpace = 200'000;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::string capitalize(std::string w) {
    if (!w.empty()) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
}

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    std::size_t between(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    double normal(double mu, double sigma) { return std::normal_distribution<double>(mu, sigma)(rng_); }

    // k distinct values from [lo, lo + n).
    std::vector<std::uint64_t> distinct(std::uint64_t lo, std::size_t n, std::size_t k) {
        k = std::min(k, n);
        std::vector<std::uint64_t> out;
        while (out.size() < k) {
            const std::uint64_t v = lo + below(n);
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
        return out;
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

    template <typename T>
    std::vector<T> sample(const std::vector<T>& v, std::size_t k) {
        std::vector<T> copy = v;
        std::shuffle(copy.begin(), copy.end(), rng_);
        copy.resize(std::min(k, copy.size()));
        return copy;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

std::string person_name(std::uint64_t surname_index, std::uint64_t initials_seed) {
    std::string initials;
    initials += static_cast<char>('A' + initials_seed % 26);
    if ((initials_seed / 26) % 2) initials += static_cast<char>('A' + (initials_seed / 52) % 26);
    return capitalize(pseudo_word(kSurnameBase + surname_index)) + ", " + initials;
}

struct Phase {
    std::vector<std::string> coauthors;
    std::vector<std::uint64_t> address;
    std::vector<std::uint64_t> topic;
    std::vector<std::uint64_t> keywords;
    std::vector<std::string> subjects;
    std::vector<std::string> journals;
};

Phase make_phase(Draw& d, const GeneratorParams& p, const Phase* previous) {
    Phase ph;
    for (std::size_t i = 0; i < p.coauthor_pool; ++i) {
        // A moving author keeps a few former coauthors.
        if (previous && i < p.coauthor_pool / 4 && i < previous->coauthors.size()) {
            ph.coauthors.push_back(previous->coauthors[i]);
        } else {
            ph.coauthors.push_back(person_name(d.below(kSurnameSpace), d.below(26 * 26 * 2)));
        }
    }
    ph.address = d.distinct(kAddressBase + p.common_address_words, p.address_vocabulary, p.address_words);
    ph.topic = d.distinct(kTitleBase + p.common_title_words, p.title_vocabulary, p.topic_words);
    ph.keywords = d.distinct(kKeywordBase, p.keyword_vocabulary, p.keyword_pool);
    for (auto s : d.distinct(kSubjectBase, p.subject_vocabulary, p.subjects_per_author)) {
        ph.subjects.push_back(capitalize(pseudo_word(s)) + " Sciences");
    }
    for (auto j : d.distinct(kJournalBase, p.journal_vocabulary, p.journals_per_author)) {
        ph.journals.push_back("J " + capitalize(pseudo_word(j)) + " Res");
    }
    return ph;
}

RecordText make_paper(Draw& d, const GeneratorParams& p, const Phase& work, const Phase& affiliation,
                      const std::string& email, int year) {
    RecordText t;
    std::vector<std::string> authors{p.query_author};
    const std::size_t slots = d.between(p.coauthors_min, p.coauthors_max);
    std::size_t pooled = 0;
    for (std::size_t s = 0; s < slots; ++s) pooled += d.chance(p.coauthor_rate);
    const std::size_t outside = slots - pooled;
    for (auto& name : d.sample(work.coauthors, pooled)) authors.push_back(name);
    for (std::size_t s = 0; s < outside; ++s) {
        authors.push_back(person_name(kSurnameSpace + d.below(kSurnameSpace), d.below(26 * 26 * 2)));
    }
    std::shuffle(authors.begin(), authors.end(), d.engine());
    t.authors = std::move(authors);

    std::string title;
    for (std::size_t w = 0; w < p.title_words; ++w) {
        const std::uint64_t idx = d.chance(p.title_overlap) ? d.pick(work.topic)
                                                            : kTitleBase + d.below(p.common_title_words);
        std::string word = pseudo_word(idx);
        title += title.empty() ? capitalize(word) : " " + word;
    }
    t.title = std::move(title);

    std::vector<std::string> addr;
    for (auto w : affiliation.address) {
        if (d.chance(p.address_overlap)) addr.push_back(capitalize(pseudo_word(w)));
    }
    if (addr.empty()) addr.push_back(capitalize(pseudo_word(affiliation.address.front())));
    for (std::size_t c = 0; c < p.common_address_per_paper; ++c) {
        addr.push_back(capitalize(pseudo_word(kAddressBase + d.below(p.common_address_words))));
    }
    std::string line;
    for (std::size_t i = 0; i < addr.size(); ++i) {
        if (i) line += (i % 2 == 0) ? ", " : " ";
        line += addr[i];
    }
    t.addresses.push_back(std::move(line));

    for (std::size_t k = 0; k < p.keywords_per_paper; ++k) {
        const std::uint64_t idx = d.chance(p.keyword_overlap) ? d.pick(work.keywords)
                                                              : kKeywordBase + d.below(p.keyword_vocabulary);
        std::string kw = pseudo_word(idx);
        if (std::find(t.keywords.begin(), t.keywords.end(), kw) == t.keywords.end()) t.keywords.push_back(kw);
    }
    t.subjects = d.sample(work.subjects, d.between(std::size_t{1}, work.subjects.size()));
    t.source = d.pick(work.journals);
    t.volume = std::to_string(d.between(1, 120));
    const int first_page = d.between(1, 3000);
    t.pages = std::to_string(first_page) + ":" + std::to_string(first_page + d.between(3, 20));
    t.year = std::to_string(year);
    if (d.chance(p.email_rate)) t.emails.push_back(email);
    t.citations = static_cast<std::uint32_t>(std::min(5000.0, std::floor(std::exp(d.normal(1.8, 1.3)))));
    return t;
}

} // namespace

std::string pseudo_word(std::uint64_t index) {
    static constexpr std::string_view consonants = "bdfgklmnprstvz";
    static constexpr std::string_view vowels = "aeiou";
    const std::uint64_t base = consonants.size() * vowels.size();
    std::string out;
    // Three syllables cover 343000 indices; larger indices add syllables.
    std::uint64_t v = index;
    for (int s = 0; s < 3 || v > 0; ++s) {
        const std::uint64_t syl = v % base;
        v /= base;
        out += consonants[syl / vowels.size()];
        out += vowels[syl % vowels.size()];
    }
    return out;
}

void GeneratorParams::validate() const {
    auto positive = [](std::size_t v, const char* name) {
        if (v < 1) throw std::invalid_argument(std::string(name) + " must be at least 1");
    };
    positive(n_authors, "n_authors");
    positive(papers_min, "papers_min");
    positive(coauthor_pool, "coauthor_pool");
    positive(address_words, "address_words");
    positive(address_vocabulary, "address_vocabulary");
    positive(common_address_words, "common_address_words");
    positive(topic_words, "topic_words");
    positive(title_vocabulary, "title_vocabulary");
    positive(common_title_words, "common_title_words");
    positive(title_words, "title_words");
    positive(keyword_pool, "keyword_pool");
    positive(keyword_vocabulary, "keyword_vocabulary");
    positive(keywords_per_paper, "keywords_per_paper");
    positive(subject_vocabulary, "subject_vocabulary");
    positive(subjects_per_author, "subjects_per_author");
    positive(journal_vocabulary, "journal_vocabulary");
    positive(journals_per_author, "journals_per_author");
    if (papers_max < papers_min) throw std::invalid_argument("papers_max < papers_min");
    if (coauthors_max < coauthors_min) throw std::invalid_argument("coauthors_max < coauthors_min");
    if (career_min < 1 || career_max < career_min) throw std::invalid_argument("bad career span");
    if (last_year - first_year < career_max) throw std::invalid_argument("year range shorter than career_max");
    for (double r : {coauthor_rate, address_overlap, title_overlap, keyword_overlap, email_rate, move_rate,
                     pending_rate}) {
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("rates must lie in [0, 1]");
    }
    if (address_words > address_vocabulary || topic_words > title_vocabulary || keyword_pool > keyword_vocabulary ||
        subjects_per_author > subject_vocabulary || journals_per_author > journal_vocabulary) {
        throw std::invalid_argument("per-author pool larger than its vocabulary");
    }
}

SyntheticCorpus generate(const GeneratorParams& p) {
    p.validate();

    struct Paper {
        RecordText text;
        int author;
    };
    std::vector<Paper> papers;

    for (std::size_t a = 0; a < p.n_authors; ++a) {
        Draw d(splitmix64(p.seed ^ splitmix64(a + 1)));
        const int span = d.between(p.career_min, p.career_max);
        const int start = d.between(p.first_year, p.last_year - span);
        const std::size_t n_papers = d.between(p.papers_min, p.papers_max);

        const Phase early = make_phase(d, p, nullptr);
        std::optional<Phase> late;
        int move_year = start + span + 1;
        if (d.chance(p.move_rate)) {
            late = make_phase(d, p, &early);
            move_year = start + span / 2;
        }
        const std::string email = "jsmith@" + pseudo_word(early.address.front()) + ".edu";
        const std::string late_email = late ? "jsmith@" + pseudo_word(late->address.front()) + ".edu" : email;

        for (std::size_t k = 0; k < n_papers; ++k) {
            const int year = d.between(start, start + span);
            if (late && year >= move_year) {
                const Phase& work = d.chance(p.pending_rate) ? early : *late;
                papers.push_back({make_paper(d, p, work, *late, late_email, year), static_cast<int>(a)});
            } else {
                papers.push_back({make_paper(d, p, early, early, email, year), static_cast<int>(a)});
            }
        }
    }

    Draw order(splitmix64(p.seed));
    std::shuffle(papers.begin(), papers.end(), order.engine());

    SyntheticCorpus out;
    out.tsv = default_tsv_header() + "\n";
    for (const auto& paper : papers) {
        out.tsv += render_tsv_row(paper.text) + "\n";
        out.truth.push_back(paper.author);
    }
    out.corpus = parse_export(out.tsv, ExportFormat::tsv, p.query_author);
    return out;
}

QualityMetrics evaluate(std::span<const Cluster> clusters, std::span<const int> truth) {
    auto pairs = [](std::uint64_t n) { return n * (n - (n > 0)) / 2; };
    QualityMetrics m;
    m.records = truth.size();
    m.clusters = clusters.size();

    std::map<int, std::uint64_t> per_author;
    for (int a : truth) ++per_author[a];
    m.authors = per_author.size();

    std::uint64_t majority_total = 0;
    std::uint64_t same_pairs_in_clusters = 0;
    std::uint64_t all_pairs_in_clusters = 0;
    for (const auto& c : clusters) {
        std::map<int, std::uint64_t> counts;
        for (std::size_t id : c.member_ids) ++counts[truth[id]];
        std::uint64_t best = 0;
        for (const auto& [author, n] : counts) {
            best = std::max(best, n);
            same_pairs_in_clusters += pairs(n);
        }
        majority_total += best;
        all_pairs_in_clusters += pairs(c.member_ids.size());
    }
    std::uint64_t same_pairs_total = 0;
    for (const auto& [author, n] : per_author) same_pairs_total += pairs(n);

    m.purity = m.records ? static_cast<double>(majority_total) / static_cast<double>(m.records) : 1.0;
    m.false_positive_pairs = all_pairs_in_clusters - same_pairs_in_clusters;
    m.false_negative_pairs = same_pairs_total - same_pairs_in_clusters;
    if (m.authors > 0 && m.clusters > m.authors) {
        m.split_rate = static_cast<double>(m.clusters - m.authors) / static_cast<double>(m.authors);
    }
    return m;
}

void write_truth_csv(std::ostream& out, std::span<const int> truth) {
    out << "record_id,author_id\n";
    for (std::size_t i = 0; i < truth.size(); ++i) out << i << ',' << truth[i] << '\n';
}

void write_metrics_csv(std::ostream& out, const QualityMetrics& m) {
    out << "records,authors,clusters,purity,split_rate,false_positive_pairs,false_negative_pairs\n";
    out << m.records << ',' << m.authors << ',' << m.clusters << ',' << m.purity << ',' << m.split_rate << ','
        << m.false_positive_pairs << ',' << m.false_negative_pairs << '\n';
}

} // namespace homonym
