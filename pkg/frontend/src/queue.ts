// Serializes expansion/rating requests: tasks run strictly in push order,
// a failure does not break the chain.

export class SerialQueue {
  private tail: Promise<unknown> = Promise.resolve();

  push<T>(task: () => Promise<T>): Promise<T> {
    const next = this.tail.then(task, task);
    this.tail = next.catch(() => undefined);
    return next;
  }

  /** Resolves once everything queued so far has settled. */
  async drain(): Promise<void> {
    let last;
    do {
      last = this.tail;
      await last.catch(() => undefined);
    } while (last !== this.tail);
  }
}
