#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace polya {

/// Thread-safe memo table. Each key is computed at most once; concurrent
/// callers for the same key wait for the first one, other keys proceed.
template <class Key, class Value>
class Memo {
public:
    template <class Make>
    const Value& get(const Key& key, Make&& make)
    {
        std::shared_ptr<Slot> slot;
        {
            std::lock_guard lock(mu_);
            auto& s = slots_[key];
            if (!s)
                s = std::make_shared<Slot>();
            slot = s;
        }
        std::call_once(slot->once, [&] { slot->value.emplace(make()); });
        return *slot->value;
    }

    void clear()
    {
        std::lock_guard lock(mu_);
        slots_.clear();
    }

private:
    struct Slot {
        std::once_flag once;
        std::optional<Value> value;
    };
    std::mutex mu_;
    std::map<Key, std::shared_ptr<Slot>> slots_;
};

} // namespace polya
