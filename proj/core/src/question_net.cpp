#include "qnet/question_net.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace qnet {

ItemId QuestionNet::add_item() {
    ItemId id = next_item_id_;
    ensure_item(id);
    return id;
}

void QuestionNet::ensure_item(ItemId id) {
    auto [it, inserted] = items_.try_emplace(id);
    if (inserted) {
        it->second.entry_time = clock_;
        if (id >= next_item_id_) next_item_id_ = id + 1;
    }
}

std::vector<ItemId> QuestionNet::items() const {
    std::vector<ItemId> ids;
    ids.reserve(items_.size());
    for (const auto& [id, info] : items_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

const QuestionNet::ItemInfo& QuestionNet::item_info(ItemId id) const {
    auto it = items_.find(id);
    if (it == items_.end())
        throw UnknownItemError("unknown item " + std::to_string(id));
    return it->second;
}

std::uint32_t QuestionNet::degree(ItemId id) const {
    return static_cast<std::uint32_t>(item_info(id).neighbors.size());
}

const std::vector<ItemId>& QuestionNet::neighbors(ItemId id) const {
    return item_info(id).neighbors;
}

std::uint64_t QuestionNet::item_entry_time(ItemId id) const {
    return item_info(id).entry_time;
}

QuestionKey QuestionNet::add_question(ItemId u, ItemId v) {
    if (u == v)
        throw SelfLoopError("self-loop question on item " + std::to_string(u));
    auto u_it = items_.find(u);
    auto v_it = items_.find(v);
    if (u_it == items_.end() || v_it == items_.end())
        throw UnknownItemError("question endpoints must be existing items");
    QuestionKey key(u, v);
    if (index_.count(key) != 0)
        throw DuplicateQuestionError("question (" + std::to_string(key.a) + "," +
                                     std::to_string(key.b) + ") already exists");
    index_.emplace(key, static_cast<std::uint32_t>(questions_.size()));
    questions_.push_back(Question{key, AnswerTally{}, clock_});
    u_it->second.neighbors.push_back(v);
    v_it->second.neighbors.push_back(u);
    return key;
}

const Question& QuestionNet::question(QuestionKey key) const {
    auto it = index_.find(key);
    if (it == index_.end())
        throw UnknownQuestionError("unknown question (" + std::to_string(key.a) +
                                   "," + std::to_string(key.b) + ")");
    return questions_[it->second];
}

const AnswerTally& QuestionNet::record_answer(QuestionKey key, bool yes) {
    auto it = index_.find(key);
    if (it == index_.end())
        throw UnknownQuestionError("unknown question (" + std::to_string(key.a) +
                                   "," + std::to_string(key.b) + ")");
    AnswerTally& tally = questions_[it->second].tally;
    if (yes)
        ++tally.n_yes;
    else
        ++tally.n_no;
    ++clock_;
    return tally;
}

void QuestionNet::save(std::ostream& out) const {
    out << "# qnet v1\n";
    for (const Question& q : questions_) {
        out << q.key.a << ' ' << q.key.b << ' ' << q.tally.n_yes << ' '
            << q.tally.n_no << ' ' << q.created_at << '\n';
    }
    std::vector<ItemId> isolated;
    for (ItemId id : items()) {
        if (item_info(id).neighbors.empty()) isolated.push_back(id);
    }
    if (!isolated.empty()) {
        out << "# isolated:";
        for (std::size_t i = 0; i < isolated.size(); ++i)
            out << (i == 0 ? " " : ",") << isolated[i];
        out << '\n';
    }
}

QuestionNet QuestionNet::load(std::istream& in) {
    QuestionNet net;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# qnet v1", 0) != 0)
        throw ParseError("missing '# qnet v1' header");
    std::size_t line_no = 1;
    std::uint64_t total_answers = 0;  // clock stays 0 while loading so that
                                      // pre-loaded items keep entry_time 0
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string tag = "# isolated:";
            if (line.rfind(tag, 0) == 0) {
                std::string rest = line.substr(tag.size());
                std::replace(rest.begin(), rest.end(), ',', ' ');
                std::istringstream iss(rest);
                ItemId id;
                while (iss >> id) net.ensure_item(id);
            }
            continue;
        }
        std::istringstream iss(line);
        ItemId u, v;
        std::uint32_t n_yes, n_no;
        std::uint64_t created_at;
        if (!(iss >> u >> v >> n_yes >> n_no >> created_at))
            throw ParseError("bad qnet line " + std::to_string(line_no) + ": " + line);
        net.ensure_item(u);
        net.ensure_item(v);
        QuestionKey key = net.add_question(u, v);
        auto idx = net.index_.at(key);
        net.questions_[idx].tally = AnswerTally{n_yes, n_no};
        net.questions_[idx].created_at = created_at;
        total_answers += n_yes + n_no;
    }
    net.clock_ = total_answers;
    return net;
}

}  // namespace qnet
