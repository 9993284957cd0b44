/** Trailing-edge debouncer used for during-typing suggestion fetches. */

export class Debouncer {
  private handle: ReturnType<typeof setTimeout> | undefined;

  constructor(readonly delayMs: number = 500) {}

  schedule(op: () => void): void {
    this.cancel();
    this.handle = setTimeout(op, this.delayMs);
  }

  cancel(): void {
    if (this.handle !== undefined) {
      clearTimeout(this.handle);
      this.handle = undefined;
    }
  }
}
