//! Evaluation options and a small work-stealing helper for running
//! independent window computations on a capped number of threads.

/// Knobs shared by the schedule-evaluating operations.
///
/// Windows of a schedule are independent pure computations; `threads` caps
/// how many run concurrently and has no effect on results. `max_cells`
/// bounds the number of input coordinates (`alphabet rank × window volume`,
/// stencil margin included) a single window computation may touch before
/// a resource error is raised.
#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub threads: usize,
    pub max_cells: usize,
    /// Also compute the image-route cross-check series where one is defined.
    pub cross_check: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            threads: 1,
            max_cells: 4_000_000,
            cross_check: true,
        }
    }
}

impl EvalOptions {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_max_cells(mut self, max_cells: usize) -> Self {
        self.max_cells = max_cells;
        self
    }

    pub fn without_cross_check(mut self) -> Self {
        self.cross_check = false;
        self
    }
}

/// Applies `f` to every item, possibly in parallel, preserving input order.
pub(crate) fn map_windows<T, U, F>(items: &[T], threads: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads == 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<U>>> = (0..items.len())
        .map(|_| std::sync::Mutex::new(None))
        .collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let out = f(&items[i]);
                *slots[i].lock().unwrap() = Some(out);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot filled"))
        .collect()
}
