/// Delta-debugging reduction over scalars: repeatedly drop contiguous scalar
/// ranges (halves, then quarters, down to single scalars) while `fails` still
/// holds. The result is 1-minimal: removing any single scalar makes it pass.
///
/// `fails(input)` must hold on entry; if it does not, the input is returned
/// unchanged.
pub fn minimize(input: &str, fails: impl Fn(&str) -> bool) -> String {
    let mut current: Vec<char> = input.chars().collect();
    if !fails(input) {
        return input.to_string();
    }
    let mut granularity = 2usize;
    while current.len() >= 2 {
        let chunk = current.len().div_ceil(granularity);
        let mut reduced = false;
        let mut start = 0;
        while start < current.len() {
            let end = (start + chunk).min(current.len());
            let candidate: String = current[..start].iter().chain(&current[end..]).collect();
            if fails(&candidate) {
                current = candidate.chars().collect();
                granularity = (granularity - 1).max(2);
                reduced = true;
                break;
            }
            start = end;
        }
        if !reduced {
            if granularity >= current.len() {
                break;
            }
            granularity = (granularity * 2).min(current.len());
        }
    }
    if current.len() == 1 && fails("") {
        return String::new();
    }
    current.into_iter().collect()
}
